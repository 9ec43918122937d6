//! Small-sample discrete entropy estimation.
//!
//! The centerpiece is SENECA: a Chao-Shen-style Horvitz-Thompson entropy
//! whose coverage comes from a self-consistent missing-mass fixed point
//! ([`missing_mass::solve_self_consistent`]) rather than from Good-Turing.
//! Baseline estimators, synthetic ground-truth distributions and a
//! reproducible simulation engine ([`bench`]) are included.
//!
//! Estimator math is generic over [`Scalar`] (`f32` or `f64`); the
//! simulation engine runs in `f64`. Entropies are in nats.
//!
//! ```
//! use seneca_core::{entropy_seneca, SampleCounts, SupportMethod};
//!
//! let counts = SampleCounts::from_labels(["a", "b", "a", "c", "d"]).unwrap();
//! let est = entropy_seneca::<f64, _>(&counts, &SupportMethod::Chao1Bc);
//! assert!(est.value > 0.0);
//! ```

pub mod bench;
pub mod distributions;
pub mod entropy;
mod error;
pub mod missing_mass;
pub mod sample;
mod scalar;
pub mod support;

pub use distributions::{
    expected_missing_mass, make_distribution, realized_missing_mass, sample, true_entropy, Family, TrueDistribution,
};
pub use entropy::{
    entropy_bonachela, entropy_chao_shen, entropy_chao_wang_jost, entropy_grassberger, entropy_james_stein,
    entropy_plugin, entropy_seneca, estimate, Diagnostics, EntropyEstimate, EstimatorKind,
};
pub use error::{Error, Result};
pub use missing_mass::{
    missing_mass_from_support, missing_mass_good_turing, mu, solve_self_consistent, SelfConsistentSolve, SolverOptions,
};
pub use sample::{Fingerprint, SampleCounts};
pub use scalar::Scalar;
pub use support::{
    support_chao1, support_chao1_bc, support_from_missing_mass, support_risky_threshold, SupportEstimate,
    SupportEstimator, SupportMethod,
};

pub type EntropyEstimateF64 = EntropyEstimate<f64>;
pub type EntropyEstimateF32 = EntropyEstimate<f32>;
pub type SelfConsistentSolveF64 = SelfConsistentSolve<f64>;
pub type SelfConsistentSolveF32 = SelfConsistentSolve<f32>;
pub type SupportEstimateF64 = SupportEstimate<f64>;
pub type SupportEstimateF32 = SupportEstimate<f32>;
pub type SolverOptionsF64 = SolverOptions<f64>;
pub type SolverOptionsF32 = SolverOptions<f32>;
