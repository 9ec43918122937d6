//! Support-size estimation.
//!
//! The self-consistent solver only needs a guess of how many labels exist;
//! anything implementing [`SupportEstimator`] can supply it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::missing_mass::missing_mass_good_turing_fp;
use crate::sample::Fingerprint;
use crate::scalar::Scalar;

/// Support estimation methods shipped with the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportMethod {
    /// `S_obs + Φ1² / (2 Φ2)`.
    Chao1,
    /// `S_obs + Φ1 (Φ1 - 1) / (2 (Φ2 + 1))`.
    #[default]
    Chao1Bc,
    /// `S_obs / (1 - M_GT)` with the adjusted Good-Turing mass.
    GoodTuring,
    /// Externally supplied value (e.g. the true support in simulations).
    Known,
}

impl SupportMethod {
    pub const SELECTABLE: [SupportMethod; 3] =
        [SupportMethod::Chao1, SupportMethod::Chao1Bc, SupportMethod::GoodTuring];

    pub fn tag(&self) -> &'static str {
        match self {
            SupportMethod::Chao1 => "chao1",
            SupportMethod::Chao1Bc => "chao1-bc",
            SupportMethod::GoodTuring => "good-turing",
            SupportMethod::Known => "known",
        }
    }
}

impl fmt::Display for SupportMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SupportMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::SELECTABLE.into_iter().find(|m| m.tag() == s).ok_or_else(|| Error::UnknownTag {
            kind: "support estimator",
            tag: s.to_string(),
            valid: Self::SELECTABLE.map(|m| m.tag()).join(", "),
        })
    }
}

/// An estimate of the number of labels, `|X|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportEstimate<T> {
    pub value: T,
    pub method: SupportMethod,
    /// Set when Chao1 had no doubletons and the bias-corrected form was used.
    pub rerouted: bool,
}

impl<T: Scalar> SupportEstimate<T> {
    pub fn known(value: T) -> Self {
        Self { value, method: SupportMethod::Known, rerouted: false }
    }

    /// Raises the estimate so at least one label is presumed unseen.
    pub fn clipped_for_solver(self, observed: usize) -> Self {
        let floor = T::count(observed + 1);
        Self { value: self.value.max(floor), ..self }
    }
}

/// Anything that turns a fingerprint into a support-size guess.
pub trait SupportEstimator<T: Scalar> {
    fn estimate(&self, fp: &Fingerprint, observed: usize) -> SupportEstimate<T>;
}

impl<T: Scalar> SupportEstimator<T> for SupportMethod {
    fn estimate(&self, fp: &Fingerprint, observed: usize) -> SupportEstimate<T> {
        match self {
            SupportMethod::Chao1 => support_chao1(fp, observed),
            SupportMethod::Chao1Bc => support_chao1_bc(fp, observed),
            SupportMethod::GoodTuring => {
                let m = missing_mass_good_turing_fp::<T>(fp, true);
                // adjusted Good-Turing is always < 1 for a non-empty sample
                support_from_missing_mass(observed, m).expect("adjusted mass below one")
            }
            SupportMethod::Known => panic!("known support has no estimator; use SupportEstimate::known"),
        }
    }
}

impl<T: Scalar> SupportEstimator<T> for SupportEstimate<T> {
    fn estimate(&self, _fp: &Fingerprint, _observed: usize) -> SupportEstimate<T> {
        *self
    }
}

impl<T, F> SupportEstimator<T> for F
where
    T: Scalar,
    F: Fn(&Fingerprint, usize) -> SupportEstimate<T>,
{
    fn estimate(&self, fp: &Fingerprint, observed: usize) -> SupportEstimate<T> {
        self(fp, observed)
    }
}

/// Classic Chao1. Without doubletons the quotient is undefined and the
/// bias-corrected form is returned instead, with `rerouted` set.
pub fn support_chao1<T: Scalar>(fp: &Fingerprint, observed: usize) -> SupportEstimate<T> {
    let (f1, f2) = (fp.phi(1), fp.phi(2));
    if f1 > 0 && f2 == 0 {
        return SupportEstimate { method: SupportMethod::Chao1, rerouted: true, ..support_chao1_bc(fp, observed) };
    }
    let extra = if f1 == 0 { T::zero() } else { T::count(f1).powi(2) / (T::lit(2.0) * T::count(f2)) };
    SupportEstimate { value: T::count(observed) + extra, method: SupportMethod::Chao1, rerouted: false }
}

/// Bias-corrected Chao1; always finite.
pub fn support_chao1_bc<T: Scalar>(fp: &Fingerprint, observed: usize) -> SupportEstimate<T> {
    let (f1, f2) = (fp.phi(1), fp.phi(2));
    let extra = T::count(f1 * f1.saturating_sub(1)) / (T::lit(2.0) * T::count(f2 + 1));
    SupportEstimate { value: T::count(observed) + extra, method: SupportMethod::Chao1Bc, rerouted: false }
}

/// `observed / (1 - m)`.
pub fn support_from_missing_mass<T: Scalar>(observed: usize, m: T) -> Result<SupportEstimate<T>> {
    if m.is_nan() || m >= T::one() {
        return Err(Error::TotalMissingMass(m.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(SupportEstimate {
        value: T::count(observed) / (T::one() - m),
        method: SupportMethod::GoodTuring,
        rerouted: false,
    })
}

/// Largest integer `γ ≥ 2` with `n > γ / ln γ`, or `None` when no such
/// `γ` exists (`n ≤ e`). Supports beyond `γ` are "support-risky".
pub fn support_risky_threshold(n: usize) -> Option<usize> {
    let log_term = (n.max(3) as f64).ln().ceil() as usize;
    let bound = (n * log_term * 4).max(2);
    (2..=bound)
        .filter(|&g| {
            let g = g as f64;
            (n as f64) > g / g.ln()
        })
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::SampleCounts;

    /// Fingerprint with the given Φ1, Φ2 plus filler labels seen 3 times.
    fn fp(f1: usize, f2: usize, others: usize) -> (Fingerprint, usize) {
        let mut counts = vec![1; f1];
        counts.extend(std::iter::repeat_n(2, f2));
        counts.extend(std::iter::repeat_n(3, others));
        (SampleCounts::new(counts).unwrap().fingerprint(), f1 + f2 + others)
    }

    #[test]
    fn chao1_examples() {
        let (f, obs) = fp(3, 1, 1);
        assert_eq!(support_chao1::<f64>(&f, obs).value, 9.5);
        let (f, obs) = fp(0, 2, 3);
        assert_eq!(support_chao1::<f64>(&f, obs).value, 5.0);
        let (f, obs) = fp(2, 0, 1);
        let s = support_chao1::<f64>(&f, obs);
        assert_eq!(s.value, 4.0);
        assert!(s.rerouted);
    }

    #[test]
    fn chao1_bc_examples() {
        let (f, obs) = fp(3, 1, 1);
        assert_eq!(support_chao1_bc::<f64>(&f, obs).value, 6.5);
        let (f, obs) = fp(0, 2, 3);
        assert_eq!(support_chao1_bc::<f64>(&f, obs).value, 5.0);
        let (f, obs) = fp(10, 0, 0);
        assert_eq!(support_chao1_bc::<f64>(&f, obs).value, 55.0);
    }

    #[test]
    fn from_missing_mass_examples() {
        assert_eq!(support_from_missing_mass(5, 0.0_f64).unwrap().value, 5.0);
        assert_eq!(support_from_missing_mass(5, 0.5_f64).unwrap().value, 10.0);
        assert!((support_from_missing_mass(7, 0.3_f64).unwrap().value - 10.0).abs() < 1e-12);
        assert_eq!(support_from_missing_mass(5, 1.0_f64), Err(Error::TotalMissingMass(1.0)));
    }

    #[test]
    fn risky_threshold_examples() {
        assert_eq!(support_risky_threshold(10), Some(35));
        assert_eq!(support_risky_threshold(2), None);
        assert_eq!(support_risky_threshold(1), None);
        // exhaustive scan of 3 > γ/ln γ over γ = 2..100
        let brute = (2..=100).filter(|&g| 3.0 > g as f64 / (g as f64).ln()).max();
        assert_eq!(brute, Some(4));
        assert_eq!(support_risky_threshold(3), brute);
    }

    #[test]
    fn risky_threshold_non_decreasing() {
        let mut prev = None;
        for n in 1..300 {
            let g = support_risky_threshold(n);
            assert!(g >= prev, "n={n}");
            prev = g;
        }
    }

    #[test]
    fn method_tags_round_trip() {
        for m in SupportMethod::SELECTABLE {
            assert_eq!(m.tag().parse::<SupportMethod>().unwrap(), m);
        }
        assert!(matches!("rwc".parse::<SupportMethod>(), Err(Error::UnknownTag { .. })));
    }

    #[test]
    fn clip_keeps_one_unseen() {
        let s = SupportEstimate::known(4.0_f64).clipped_for_solver(4);
        assert_eq!(s.value, 5.0);
        let s = SupportEstimate::known(9.0_f64).clipped_for_solver(4);
        assert_eq!(s.value, 9.0);
    }
}
