//! Borda-count aggregation of per-context estimator rankings.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::entropy::EstimatorKind;
use crate::error::{Error, Result};

/// One ranking of estimators, best first. Inner vectors are tie groups.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ballot {
    pub population: String,
    pub sample_size: usize,
    pub ranking: Vec<Vec<EstimatorKind>>,
}

impl Ballot {
    /// Ranks by ascending score; exactly equal scores tie.
    pub fn from_scores(population: impl Into<String>, sample_size: usize, scores: &[(EstimatorKind, f64)]) -> Self {
        let mut sorted: Vec<(EstimatorKind, f64)> = scores.to_vec();
        sorted.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut ranking: Vec<Vec<EstimatorKind>> = Vec::new();
        let mut last: Option<f64> = None;
        for (kind, score) in sorted {
            match (last, ranking.last_mut()) {
                (Some(prev), Some(group)) if prev == score => group.push(kind),
                _ => ranking.push(vec![kind]),
            }
            last = Some(score);
        }
        Self { population: population.into(), sample_size, ranking }
    }

    pub fn candidates(&self) -> BTreeSet<EstimatorKind> {
        self.ranking.iter().flatten().copied().collect()
    }

    /// Points per estimator: the number of candidates outranked, ties
    /// sharing the mean of their positions' points.
    pub fn points(&self) -> BTreeMap<EstimatorKind, f64> {
        let k = self.ranking.iter().map(Vec::len).sum::<usize>();
        let mut out = BTreeMap::new();
        let mut position = 0;
        for group in &self.ranking {
            let g = group.len();
            // positions position..position+g earn k-1-position down to k-position-g
            let total: usize = (position..position + g).map(|p| k - 1 - p).sum();
            let share = total as f64 / g as f64;
            for &kind in group {
                out.insert(kind, share);
            }
            position += g;
        }
        out
    }
}

/// Sums Borda points over ballots. All ballots must rank the same set.
pub fn borda(ballots: &[Ballot]) -> Result<BTreeMap<EstimatorKind, f64>> {
    let mut totals = BTreeMap::new();
    let Some(first) = ballots.first() else {
        return Ok(totals);
    };
    let expected = first.candidates();
    for ballot in ballots {
        let cands = ballot.candidates();
        if cands != expected || cands.len() != ballot.ranking.iter().map(Vec::len).sum::<usize>() {
            return Err(Error::InconsistentBallots);
        }
        for (kind, pts) in ballot.points() {
            *totals.entry(kind).or_insert(0.0) += pts;
        }
    }
    Ok(totals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use EstimatorKind::*;

    fn ballot(ranking: Vec<Vec<EstimatorKind>>) -> Ballot {
        Ballot { population: "p".into(), sample_size: 10, ranking }
    }

    #[test]
    fn strict_rankings() {
        let b = ballot(vec![vec![Plugin], vec![ChaoShen], vec![Seneca]]);
        let totals = borda(&[b.clone(), b]).unwrap();
        assert_eq!(totals[&Plugin], 4.0);
        assert_eq!(totals[&ChaoShen], 2.0);
        assert_eq!(totals[&Seneca], 0.0);
    }

    #[test]
    fn ties_share_points() {
        let totals = borda(&[ballot(vec![vec![Plugin, ChaoShen], vec![Seneca]])]).unwrap();
        assert_eq!(totals[&Plugin], 1.5);
        assert_eq!(totals[&ChaoShen], 1.5);
        assert_eq!(totals[&Seneca], 0.0);
    }

    #[test]
    fn empty_ballot_list() {
        assert!(borda(&[]).unwrap().values().all(|&v| v == 0.0));
    }

    #[test]
    fn inconsistent_sets_rejected() {
        let a = ballot(vec![vec![Plugin], vec![Seneca]]);
        let b = ballot(vec![vec![Plugin], vec![ChaoShen]]);
        assert_eq!(borda(&[a.clone(), b]), Err(Error::InconsistentBallots));
        let dup = ballot(vec![vec![Plugin], vec![Plugin, Seneca]]);
        assert_eq!(borda(&[a, dup]), Err(Error::InconsistentBallots));
    }

    #[test]
    fn from_scores_groups_exact_ties() {
        let b = Ballot::from_scores("p", 10, &[(Seneca, 0.0), (Plugin, 0.0), (Bonachela, 0.3)]);
        assert_eq!(b.ranking, vec![vec![Plugin, Seneca], vec![Bonachela]]);
    }
}
