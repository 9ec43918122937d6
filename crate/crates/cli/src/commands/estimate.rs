use std::io::Write;

use seneca_core::{estimate as run_estimator, Diagnostics};

use super::estimators_or_all;
use crate::args::EstimateArgs;
use crate::error::{CliError, CliResult};
use crate::input::read_counts;
use crate::output::{fmt_f64, fmt_opt, write_csv};

const HEADER: [&str; 6] = ["estimator", "value", "coverage", "m_star", "upsilon", "fallback"];

pub fn estimate(args: &EstimateArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let counts = read_counts(&args.input)?;
    let mut rows = Vec::new();
    for kind in estimators_or_all(&args.estimators) {
        let est = run_estimator::<f64, _>(kind, &counts, &args.support)?;
        if !est.value.is_finite() {
            return Err(CliError::Numeric(format!("{kind} returned {}", est.value)));
        }
        let (coverage, m_star, upsilon, fallback) = match est.diagnostics {
            Diagnostics::None => (None, None, String::new(), String::new()),
            Diagnostics::Coverage(c) => (Some(c), None, String::new(), String::new()),
            Diagnostics::Seneca { solve, .. } => {
                (Some(solve.coverage), Some(solve.m_star), solve.upsilon_used.to_string(), solve.fallback.to_string())
            }
        };
        rows.push(vec![
            kind.tag().to_string(),
            fmt_f64(args.base.convert(est.value)),
            fmt_opt(coverage),
            fmt_opt(m_star),
            upsilon,
            fallback,
        ]);
    }
    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_csv(file, &HEADER, rows).map_err(|e| CliError::io(path, e.into()))
        }
        None => write_csv(stdout, &HEADER, rows).map_err(|e| CliError::io("<stdout>", e.into())),
    }
}
