//! Entropy estimators over label counts. All values are in nats.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::missing_mass::{missing_mass_good_turing, solve_self_consistent, SelfConsistentSolve};
use crate::sample::SampleCounts;
use crate::scalar::{digamma_half, harmonic, powu, Scalar};
use crate::support::SupportEstimator;

/// Estimator tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstimatorKind {
    Plugin,
    Grassberger,
    JamesStein,
    Bonachela,
    ChaoShen,
    ChaoWangJost,
    Seneca,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 7] = [
        EstimatorKind::Plugin,
        EstimatorKind::Grassberger,
        EstimatorKind::JamesStein,
        EstimatorKind::Bonachela,
        EstimatorKind::ChaoShen,
        EstimatorKind::ChaoWangJost,
        EstimatorKind::Seneca,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            EstimatorKind::Plugin => "plugin",
            EstimatorKind::Grassberger => "grassberger",
            EstimatorKind::JamesStein => "james-stein",
            EstimatorKind::Bonachela => "bonachela",
            EstimatorKind::ChaoShen => "chao-shen",
            EstimatorKind::ChaoWangJost => "chao-wang-jost",
            EstimatorKind::Seneca => "seneca",
        }
    }

    /// Smallest sample size the estimator accepts.
    pub fn min_sample_size(&self) -> usize {
        match self {
            EstimatorKind::JamesStein | EstimatorKind::ChaoWangJost => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == s).ok_or_else(|| Error::UnknownTag {
            kind: "estimator",
            tag: s.to_string(),
            valid: Self::ALL.map(|k| k.tag()).join(", "),
        })
    }
}

/// Per-call diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Diagnostics<T> {
    None,
    /// Coverage used by Chao-Shen.
    Coverage(T),
    Seneca {
        solve: SelfConsistentSolve<T>,
        /// Coverage was numerically zero and the estimate was set to 0.
        degenerate_coverage: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyEstimate<T> {
    pub value: T,
    pub method: EstimatorKind,
    pub diagnostics: Diagnostics<T>,
}

impl<T> EntropyEstimate<T> {
    fn plain(value: T, method: EstimatorKind) -> Self {
        Self { value, method, diagnostics: Diagnostics::None }
    }

    pub fn solve(&self) -> Option<&SelfConsistentSolve<T>> {
        match &self.diagnostics {
            Diagnostics::Seneca { solve, .. } => Some(solve),
            _ => None,
        }
    }
}

fn require_n(counts: &SampleCounts, kind: EstimatorKind) -> Result<()> {
    let min = kind.min_sample_size();
    if counts.n() < min {
        return Err(Error::SampleTooSmall { estimator: kind.tag(), min, got: counts.n() });
    }
    Ok(())
}

/// Runs the estimator named by `kind`. `support` is used by SENECA only.
pub fn estimate<T, S>(kind: EstimatorKind, counts: &SampleCounts, support: &S) -> Result<EntropyEstimate<T>>
where
    T: Scalar,
    S: SupportEstimator<T> + ?Sized,
{
    Ok(match kind {
        EstimatorKind::Plugin => entropy_plugin(counts),
        EstimatorKind::Grassberger => entropy_grassberger(counts),
        EstimatorKind::JamesStein => entropy_james_stein(counts)?,
        EstimatorKind::Bonachela => entropy_bonachela(counts),
        EstimatorKind::ChaoShen => entropy_chao_shen(counts),
        EstimatorKind::ChaoWangJost => entropy_chao_wang_jost(counts)?,
        EstimatorKind::Seneca => entropy_seneca(counts, support),
    })
}

fn plugin_of<T: Scalar>(probs: impl Iterator<Item = T>) -> T {
    -probs.filter(|p| *p > T::zero()).fold(T::zero(), |acc, p| acc + p * p.ln())
}

/// Maximum-likelihood ("plugin") entropy.
pub fn entropy_plugin<T: Scalar>(counts: &SampleCounts) -> EntropyEstimate<T> {
    let n = T::count(counts.n());
    let value = plugin_of(counts.counts().iter().map(|&c| T::count(c) / n));
    EntropyEstimate::plain(value, EstimatorKind::Plugin)
}

/// Horvitz-Thompson entropy of observed frequencies shrunk by `coverage`:
/// `-Σ p ln p / (1 - (1 - p)^n)` with `p = coverage · N_u / n`.
pub fn coverage_adjusted_entropy<T: Scalar>(counts: &SampleCounts, coverage: T) -> T {
    let n = counts.n();
    let total = T::count(n);
    counts.counts().iter().fold(T::zero(), |acc, &c| {
        let p = coverage * T::count(c) / total;
        if p >= T::one() || p <= T::zero() {
            // a label carrying all mass contributes 0 ln 1 = 0
            return acc;
        }
        let detect = T::one() - powu(T::one() - p, n);
        acc - p * p.ln() / detect
    })
}

/// Chao-Shen coverage-adjusted entropy, coverage from adjusted Good-Turing.
pub fn entropy_chao_shen<T: Scalar>(counts: &SampleCounts) -> EntropyEstimate<T> {
    let coverage = T::one() - missing_mass_good_turing::<T>(counts, true);
    EntropyEstimate {
        value: coverage_adjusted_entropy(counts, coverage),
        method: EstimatorKind::ChaoShen,
        diagnostics: Diagnostics::Coverage(coverage),
    }
}

/// SENECA: Horvitz-Thompson entropy with coverage from the self-consistent
/// missing mass.
pub fn entropy_seneca<T, S>(counts: &SampleCounts, support: &S) -> EntropyEstimate<T>
where
    T: Scalar,
    S: SupportEstimator<T> + ?Sized,
{
    let solve = solve_self_consistent(counts, support);
    entropy_seneca_from_solve(counts, solve)
}

/// Evaluates the SENECA entropy for an already computed fixed point.
pub fn entropy_seneca_from_solve<T: Scalar>(
    counts: &SampleCounts,
    solve: SelfConsistentSolve<T>,
) -> EntropyEstimate<T> {
    let degenerate = solve.coverage < T::lit(1e-12);
    let value = if degenerate { T::zero() } else { coverage_adjusted_entropy(counts, solve.coverage) };
    EntropyEstimate {
        value,
        method: EstimatorKind::Seneca,
        diagnostics: Diagnostics::Seneca { solve, degenerate_coverage: degenerate },
    }
}

/// Grassberger (2003): `ln n - (1/n) Σ N_u G(N_u)` with
/// `G(k) = ψ(k) + ½ (-1)^k (ψ((k+1)/2) - ψ(k/2))`.
///
/// Not bounded below by zero: a single label seen `n` times yields a small
/// negative value.
pub fn entropy_grassberger<T: Scalar>(counts: &SampleCounts) -> EntropyEstimate<T> {
    let n = counts.n();
    let half = T::lit(0.5);
    let weighted = counts.counts().iter().fold(T::zero(), |acc, &k| {
        let sign = if k % 2 == 0 { T::one() } else { -T::one() };
        let g = digamma_half::<T>(2 * k) + half * sign * (digamma_half::<T>(k + 1) - digamma_half::<T>(k));
        acc + T::count(k) * g
    });
    let value = T::count(n).ln() - weighted / T::count(n);
    EntropyEstimate::plain(value, EstimatorKind::Grassberger)
}

/// James-Stein shrinkage toward the uniform distribution over the observed
/// labels (Hausser & Strimmer).
pub fn entropy_james_stein<T: Scalar>(counts: &SampleCounts) -> Result<EntropyEstimate<T>> {
    require_n(counts, EstimatorKind::JamesStein)?;
    let n = T::count(counts.n());
    let cells = counts.observed_support();
    let target = T::count(cells).recip();
    let ml: Vec<T> = counts.counts().iter().map(|&c| T::count(c) / n).collect();

    let sum_sq = ml.iter().fold(T::zero(), |acc, &p| acc + p * p);
    let spread = ml.iter().fold(T::zero(), |acc, &p| acc + (target - p).powi(2));
    let lambda = if spread == T::zero() {
        // the data already sit on the target
        T::one()
    } else {
        ((T::one() - sum_sq) / ((n - T::one()) * spread)).max(T::zero()).min(T::one())
    };
    let value = plugin_of(ml.iter().map(|&p| lambda * target + (T::one() - lambda) * p));
    Ok(EntropyEstimate::plain(value, EstimatorKind::JamesStein))
}

/// Bonachela, Hinrichsen & Muñoz balanced estimator:
/// `1/(n+2) Σ_u (N_u + 1) Σ_{j=N_u+2}^{n+2} 1/j`.
pub fn entropy_bonachela<T: Scalar>(counts: &SampleCounts) -> EntropyEstimate<T> {
    let n = counts.n();
    let top = harmonic::<T>(n + 2);
    let sum = counts.counts().iter().fold(T::zero(), |acc, &c| acc + T::count(c + 1) * (top - harmonic::<T>(c + 1)));
    EntropyEstimate::plain(sum / T::count(n + 2), EstimatorKind::Bonachela)
}

/// Chao, Wang & Jost (2013) entropy, using singletons and doubletons to
/// estimate the undetected part.
pub fn entropy_chao_wang_jost<T: Scalar>(counts: &SampleCounts) -> Result<EntropyEstimate<T>> {
    require_n(counts, EstimatorKind::ChaoWangJost)?;
    let n = counts.n();
    let total = T::count(n);
    let h_n1 = harmonic::<T>(n - 1);

    let detected = counts
        .counts()
        .iter()
        .filter(|&&c| c < n)
        .fold(T::zero(), |acc, &c| acc + T::count(c) / total * (h_n1 - harmonic::<T>(c - 1)));

    let (f1, f2) = (counts.singletons(), counts.counts().iter().filter(|&&c| c == 2).count());
    let two = T::lit(2.0);
    let a = if f2 > 0 {
        two * T::count(f2) / (T::count(n - 1) * T::count(f1) + two * T::count(f2))
    } else if f1 > 0 {
        two / (T::count(n - 1) * T::count(f1 - 1) + two)
    } else {
        T::one()
    };

    let undetected = if f1 == 0 || a >= T::one() {
        T::zero()
    } else {
        let q = T::one() - a;
        let series = (1..n).fold(T::zero(), |acc, r| acc + powu(q, r) / T::count(r));
        T::count(f1) / total * q.powi(1 - n as i32) * (-a.ln() - series)
    };
    Ok(EntropyEstimate::plain(detected + undetected, EstimatorKind::ChaoWangJost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::missing_mass::SelfConsistentSolve;
    use crate::support::{SupportEstimate, SupportMethod};

    fn counts(v: &[usize]) -> SampleCounts {
        SampleCounts::new(v.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn plugin_examples() {
        close(entropy_plugin::<f64>(&counts(&[5, 5])).value, 2f64.ln(), 1e-15);
        assert_eq!(entropy_plugin::<f64>(&counts(&[10])).value, 0.0);
        close(entropy_plugin::<f64>(&counts(&[1; 10])).value, 10f64.ln(), 1e-14);
    }

    #[test]
    fn chao_shen_examples() {
        assert_eq!(entropy_chao_shen::<f64>(&counts(&[10])).value, 0.0);
        // adjusted coverage 0.5, p = 0.25: 2·(0.25 ln 4)/(1 - 0.75²)
        let want = 2.0 * (0.25 * 4f64.ln()) / (1.0 - 0.75f64.powi(2));
        close(want, 1.584_336_412_708_446_3, 1e-12);
        close(entropy_chao_shen::<f64>(&counts(&[1, 1])).value, want, 1e-14);
        // no singletons, coverage 1
        let want = 2.0 * (0.5 * 2f64.ln()) / (1.0 - 0.5f64.powi(10));
        close(entropy_chao_shen::<f64>(&counts(&[5, 5])).value, want, 1e-14);
        close(want, 0.693_824_743_786_299_1, 1e-12);
    }

    #[test]
    fn seneca_examples() {
        let single = entropy_seneca::<f64, _>(&counts(&[10]), &SupportMethod::Chao1Bc);
        assert_eq!(single.value, 0.0);
        assert_eq!(single.solve().unwrap().m_star, 0.0);

        // fixed point m* ≈ 0.4308702 then direct evaluation of the HT sum
        let est = entropy_seneca::<f64, _>(&counts(&[1, 1]), &SupportEstimate::known(3.0));
        close(est.solve().unwrap().m_star, 0.430_870_213_592_293_8, 1e-8);
        close(est.value, 1.465_277_177_582_074_8, 1e-7);
    }

    #[test]
    fn seneca_with_zero_mass_is_coverage_one_chao_shen() {
        let c = counts(&[4, 3, 2, 1]);
        let forced = SelfConsistentSolve {
            m_star: 0.0,
            upsilon_used: 1,
            m0: 0.5,
            coverage: 1.0,
            iterations: 0,
            fallback: false,
        };
        let s = entropy_seneca_from_solve(&c, forced).value;
        close(s, coverage_adjusted_entropy(&c, 1.0), 0.0);
        let no_singletons = counts(&[5, 5]);
        close(
            entropy_seneca_from_solve(&no_singletons, forced).value,
            entropy_chao_shen::<f64>(&no_singletons).value,
            1e-15,
        );
    }

    #[test]
    fn seneca_degenerate_coverage_returns_zero() {
        let forced =
            SelfConsistentSolve { m_star: 1.0, upsilon_used: 1, m0: 0.5, coverage: 0.0, iterations: 0, fallback: true };
        let est = entropy_seneca_from_solve(&counts(&[1, 1, 1]), forced);
        assert_eq!(est.value, 0.0);
        assert!(matches!(est.diagnostics, Diagnostics::Seneca { degenerate_coverage: true, .. }));
    }

    #[test]
    fn bonachela_examples() {
        close(entropy_bonachela::<f64>(&counts(&[10])).value, 11.0 / 144.0, 1e-15);
        close(entropy_bonachela::<f64>(&counts(&[1, 1])).value, 7.0 / 12.0, 1e-15);
        assert!(entropy_bonachela::<f64>(&counts(&[5, 5])).value > entropy_bonachela::<f64>(&counts(&[9, 1])).value);
    }

    #[test]
    fn chao_wang_jost_simple_cases() {
        assert_eq!(entropy_chao_wang_jost::<f64>(&counts(&[10])).unwrap().value, 0.0);
        let want: f64 = (5..=9).map(|k| 1.0 / k as f64).sum();
        close(want, 0.745_634_920_634_920_7, 1e-15);
        close(entropy_chao_wang_jost::<f64>(&counts(&[5, 5])).unwrap().value, want, 1e-14);
    }

    #[test]
    fn james_stein_simple_cases() {
        close(entropy_james_stein::<f64>(&counts(&[5, 5])).unwrap().value, 2f64.ln(), 1e-15);
        assert_eq!(entropy_james_stein::<f64>(&counts(&[10])).unwrap().value, 0.0);
    }

    #[test]
    fn small_sample_errors() {
        let one = counts(&[1]);
        assert!(matches!(entropy_james_stein::<f64>(&one), Err(Error::SampleTooSmall { min: 2, .. })));
        assert!(matches!(entropy_chao_wang_jost::<f64>(&one), Err(Error::SampleTooSmall { min: 2, .. })));
    }

    #[test]
    fn grassberger_consistency_limit() {
        let big = counts(&[500_000, 500_000]);
        close(entropy_grassberger::<f64>(&big).value, 2f64.ln(), 1e-3);
    }

    #[test]
    fn tags_round_trip() {
        for k in EstimatorKind::ALL {
            assert_eq!(k.tag().parse::<EstimatorKind>().unwrap(), k);
        }
        let err = "miller-madow".parse::<EstimatorKind>().unwrap_err();
        assert!(err.to_string().contains("chao-wang-jost"));
    }
}
