//! Missing-mass estimators and the self-consistent fixed point.
//!
//! The self-consistent estimate is a fixed point `m* = μ(m*, υ, X)` where
//!
//! ```text
//! μ(m, υ, X) = (1 - m) Σ_u p̂_u (1 - (1 - m) p̂_u)^n  +  m (1 - m / max(υ, 1))^n
//! ```
//!
//! The first term is the expected missing mass contributed by observed labels
//! after isotropic shrinkage by the coverage `1 - m`; the second spreads `m`
//! evenly over `υ` unseen labels.

use crate::sample::{Fingerprint, SampleCounts};
use crate::scalar::{powu, Scalar};
use crate::support::{SupportEstimate, SupportEstimator};

/// Good-Turing missing mass `Φ1 / n`. The adjusted variant uses
/// `(Φ1 - 1) / n` when every label is a singleton.
pub fn missing_mass_good_turing<T: Scalar>(counts: &SampleCounts, adjusted: bool) -> T {
    good_turing(counts.singletons(), counts.n(), adjusted)
}

pub(crate) fn missing_mass_good_turing_fp<T: Scalar>(fp: &Fingerprint, adjusted: bool) -> T {
    good_turing(fp.phi(1), fp.sample_size(), adjusted)
}

fn good_turing<T: Scalar>(f1: usize, n: usize, adjusted: bool) -> T {
    let f1 = if adjusted && f1 == n { f1 - 1 } else { f1 };
    T::count(f1) / T::count(n)
}

/// `1 - observed / support`, clamped to `[0, 1]`.
pub fn missing_mass_from_support<T: Scalar>(observed: usize, support: &SupportEstimate<T>) -> T {
    (T::one() - T::count(observed) / support.value).max(T::zero()).min(T::one())
}

/// The map whose fixed point is the self-consistent missing mass.
pub fn mu<T: Scalar>(m: T, upsilon: usize, counts: &SampleCounts) -> T {
    let n = counts.n();
    let total = T::count(n);
    let coverage = T::one() - m;
    let observed = counts.counts().iter().fold(T::zero(), |acc, &c| {
        let p = T::count(c) / total;
        acc + p * powu(T::one() - coverage * p, n)
    });
    let unseen = T::count(upsilon.max(1));
    coverage * observed + m * powu(T::one() - m / unseen, n)
}

/// Solver settings for the fixed-point iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<T> {
    /// Convergence threshold on successive iterates and on the final residual.
    pub tolerance: T,
    pub max_iterations: usize,
    /// Iterates outside `[lower, upper]` count as divergence.
    pub lower: T,
    pub upper: T,
    /// Mass returned when even `υ = 1` fails is kept below this ceiling.
    pub fallback_ceiling: T,
}

impl<T: Scalar> Default for SolverOptions<T> {
    /// `1e-8` and `1 - 1e-9` in `f64`; widened to a few ulps for `f32`,
    /// where those values are not representable.
    fn default() -> Self {
        let eps = T::epsilon();
        Self {
            tolerance: T::lit(1e-8).max(eps * T::lit(16.0)),
            max_iterations: 100,
            lower: T::lit(-0.25),
            upper: T::lit(1.25),
            fallback_ceiling: T::one() - T::lit(1e-9).max(eps),
        }
    }
}

/// Outcome of [`solve_self_consistent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelfConsistentSolve<T> {
    /// The fixed point (or the fallback mass when `fallback` is set).
    pub m_star: T,
    /// Number of unseen labels assumed by the accepted attempt.
    pub upsilon_used: usize,
    /// Initial iterate `(5n - 3) / (8(n + 1))`.
    pub m0: T,
    /// `1 - m_star`, the shrinkage factor applied to observed frequencies.
    pub coverage: T,
    /// Steffensen steps summed over every attempt.
    pub iterations: usize,
    /// Every `υ` down to 1 failed and adjusted Good-Turing was used.
    pub fallback: bool,
}

/// Initial iterate for a sample of size `n`.
pub fn initial_guess<T: Scalar>(n: usize) -> T {
    T::count(5 * n - 3) / (T::lit(8.0) * T::count(n + 1))
}

/// Aitken-Steffensen acceleration of `x ← g(x)`.
///
/// Returns the accepted iterate and the number of steps, or `None` on
/// divergence (non-finite or out-of-range values) or when the iteration cap
/// is hit.
pub fn steffensen<T: Scalar, G: Fn(T) -> T>(g: G, x0: T, opts: &SolverOptions<T>) -> (Option<T>, usize) {
    let in_range = |x: T| x.is_finite() && x >= opts.lower && x <= opts.upper;
    let mut p0 = x0;
    for step in 1..=opts.max_iterations {
        let p1 = g(p0);
        let p2 = g(p1);
        if !in_range(p1) || !in_range(p2) {
            return (None, step);
        }
        let denom = p2 - T::lit(2.0) * p1 + p0;
        let p = if denom == T::zero() { p2 } else { p0 - (p1 - p0).powi(2) / denom };
        if !in_range(p) {
            return (None, step);
        }
        if (p - p0).abs() < opts.tolerance {
            return (Some(p), step);
        }
        p0 = p;
    }
    (None, opts.max_iterations)
}

/// Solves `m = μ(m, υ, X)` with default solver options.
pub fn solve_self_consistent<T, S>(counts: &SampleCounts, support: &S) -> SelfConsistentSolve<T>
where
    T: Scalar,
    S: SupportEstimator<T> + ?Sized,
{
    solve_self_consistent_with(counts, support, &SolverOptions::default())
}

/// Solves `m = μ(m, υ, X)`.
///
/// `υ` starts at `max(round(Ŝ) - S_obs, 1)` and is decremented after each
/// failed attempt. If `υ = 1` also fails the adjusted Good-Turing mass is
/// returned with `fallback` set, so the solver is total.
pub fn solve_self_consistent_with<T, S>(
    counts: &SampleCounts,
    support: &S,
    opts: &SolverOptions<T>,
) -> SelfConsistentSolve<T>
where
    T: Scalar,
    S: SupportEstimator<T> + ?Sized,
{
    let n = counts.n();
    let observed = counts.observed_support();
    let estimate = support.estimate(&counts.fingerprint(), observed).clipped_for_solver(observed);
    let mut upsilon = initial_upsilon(estimate.value, observed);
    let m0 = initial_guess::<T>(n);

    let finish = |m: T, upsilon_used, iterations, fallback| SelfConsistentSolve {
        m_star: m,
        upsilon_used,
        m0,
        coverage: T::one() - m,
        iterations,
        fallback,
    };

    // a lone label makes m = 0 an exact fixed point: μ(0) = 1·(1 - 1)^n
    if observed == 1 {
        return finish(T::zero(), upsilon, 0, false);
    }

    let mut iterations = 0;
    loop {
        let (result, steps) = steffensen(|m| mu(m, upsilon, counts), m0, opts);
        iterations += steps;
        if let Some(m) = result.and_then(|m| accept(m, upsilon, counts, opts)) {
            return finish(m, upsilon, iterations, false);
        }
        if upsilon == 1 {
            let gt = missing_mass_good_turing::<T>(counts, true);
            let m = gt.max(T::zero()).min(opts.fallback_ceiling);
            return finish(m, upsilon, iterations, true);
        }
        upsilon -= 1;
    }
}

fn initial_upsilon<T: Scalar>(support: T, observed: usize) -> usize {
    // round half up
    let rounded = (support + T::lit(0.5)).floor().to_usize().unwrap_or(usize::MAX);
    rounded.saturating_sub(observed).max(1)
}

/// Admits a converged iterate if it is a probability (up to rounding) and
/// actually satisfies the fixed-point equation.
fn accept<T: Scalar>(m: T, upsilon: usize, counts: &SampleCounts, opts: &SolverOptions<T>) -> Option<T> {
    let tol = opts.tolerance;
    if m < -tol || m > T::one() + tol {
        return None;
    }
    let m = m.max(T::zero()).min(T::one());
    ((mu(m, upsilon, counts) - m).abs() < tol).then_some(m)
}
