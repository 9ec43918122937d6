use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use seneca_core::bench::seed::StreamKey;
use seneca_core::bench::{borda, borda_pivot, subsample_bench, with_threads, Ballot, Population, SubsampleConfig};
use serde::Serialize;

use super::estimators_or_all;
use crate::args::BiodivArgs;
use crate::error::{CliError, CliResult};
use crate::input::read_counts;
use crate::output::{fmt_f64, Manifest, OutDir};

const SUMMARY_HEADER: [&str; 8] =
    ["population", "sample_size", "estimator", "truth", "trials", "rmse", "bias", "variance"];
const BALLOT_HEADER: [&str; 5] = ["population", "sample_size", "rank", "estimators", "points"];

#[derive(Serialize)]
struct BordaReport {
    totals: BTreeMap<&'static str, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    intervals: Option<BTreeMap<&'static str, BordaInterval>>,
}

#[derive(Serialize)]
struct BordaInterval {
    low: f64,
    high: f64,
    radius: f64,
}

#[derive(Serialize)]
struct Echo<'a> {
    populations: Vec<(String, String)>,
    #[serde(flatten)]
    config: &'a SubsampleConfig,
    borda_reps: usize,
    confidence: f64,
}

/// Population ids: the file stem, suffixed `#2`, `#3`, ... on repeats.
fn population_ids(args: &BiodivArgs) -> Vec<String> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    args.populations
        .iter()
        .map(|p| {
            let stem = p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
            let n = seen.entry(stem.clone()).or_insert(0);
            *n += 1;
            if *n == 1 {
                stem
            } else {
                format!("{stem}#{n}")
            }
        })
        .collect()
}

pub fn biodiv(args: &BiodivArgs) -> CliResult<()> {
    if !(args.confidence > 0.0 && args.confidence < 1.0) {
        return Err(CliError::Usage("--confidence must lie strictly between 0 and 1".into()));
    }
    let config = SubsampleConfig {
        sample_sizes: args.sizes.clone(),
        trials: args.trials,
        estimators: estimators_or_all(&args.estimators),
        support_method: args.support,
        master_seed: args.seed,
    };
    let ids = population_ids(args);
    let populations = ids
        .iter()
        .zip(&args.populations)
        .map(|(id, path)| Ok(Population { id: id.clone(), counts: read_counts(path)? }))
        .collect::<CliResult<Vec<_>>>()?;

    let started = Instant::now();
    let results = with_threads(args.threads.threads, || {
        populations.iter().map(|p| subsample_bench(p, &config)).collect::<seneca_core::Result<Vec<_>>>()
    })?
    .map_err(|e| match e {
        seneca_core::Error::InvalidConfig(msg) => CliError::Config(msg),
        e => e.into(),
    })?;

    let mut out = OutDir::create(&args.out)?;
    let rows = results.iter().flat_map(|r| &r.summaries).map(|s| {
        vec![
            s.population.clone(),
            s.sample_size.to_string(),
            s.estimator.tag().to_string(),
            fmt_f64(s.truth),
            s.trials.to_string(),
            fmt_f64(s.rmse),
            fmt_f64(s.bias),
            fmt_f64(s.variance),
        ]
    });
    out.csv("summaries.csv", &SUMMARY_HEADER, rows)?;

    let ballots: Vec<Ballot> = results.iter().flat_map(|r| r.ballots.iter().cloned()).collect();
    let mut rows = Vec::new();
    for b in &ballots {
        let points = b.points();
        let mut rank = 1;
        for group in &b.ranking {
            let names: Vec<&str> = group.iter().map(|k| k.tag()).collect();
            rows.push(vec![
                b.population.clone(),
                b.sample_size.to_string(),
                rank.to_string(),
                names.join("|"),
                fmt_f64(points[&group[0]]),
            ]);
            rank += group.len();
        }
    }
    out.csv("ballots.csv", &BALLOT_HEADER, rows)?;

    let totals = borda(&ballots)?;
    let intervals = if args.borda_reps > 0 {
        let by_population: Vec<Vec<Ballot>> = results.iter().map(|r| r.ballots.clone()).collect();
        let key = StreamKey { master_seed: args.seed, scope: "borda", index: 0, trial: 0, purpose: "pivot" };
        let ivs = borda_pivot(&by_population, args.borda_reps, args.confidence, &mut key.stream())?;
        Some(
            ivs.into_iter()
                .map(|(k, iv)| (k.tag(), BordaInterval { low: iv.low, high: iv.high, radius: iv.radius() }))
                .collect(),
        )
    } else {
        None
    };
    let report = BordaReport { totals: totals.into_iter().map(|(k, v)| (k.tag(), v)).collect(), intervals };
    out.json("borda.json", &report)?;

    let echo = Echo {
        populations: ids.iter().cloned().zip(args.populations.iter().map(|p| p.display().to_string())).collect(),
        config: &config,
        borda_reps: args.borda_reps,
        confidence: args.confidence,
    };
    let mut manifest = Manifest::new("biodiv", args.seed, echo);
    manifest.timing_ms = vec![("total".to_string(), started.elapsed().as_millis())];
    out.finish(manifest)
}
