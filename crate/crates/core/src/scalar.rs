//! Floating-point abstraction shared by every estimator.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Converts an `f64` literal, panicking only for non-representable values.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    /// Converts a count.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `base^exp` for a non-negative integer exponent.
pub(crate) fn powu<T: Scalar>(base: T, exp: usize) -> T {
    match i32::try_from(exp) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf(T::count(exp)),
    }
}

/// `H_k = 1 + 1/2 + ... + 1/k`, with `H_0 = 0`.
pub(crate) fn harmonic<T: Scalar>(k: usize) -> T {
    (1..=k).fold(T::zero(), |acc, j| acc + T::count(j).recip())
}

/// Digamma at a positive multiple of one half, `ψ(k/2)`, via the exact
/// integer and half-integer recurrences.
pub(crate) fn digamma_half<T: Scalar>(twice: usize) -> T {
    assert!(twice > 0, "digamma pole at 0");
    let euler = T::lit(0.577_215_664_901_532_9);
    if twice.is_multiple_of(2) {
        // ψ(k) = -γ + H_{k-1}
        -euler + harmonic::<T>(twice / 2 - 1)
    } else {
        // ψ(m + 1/2) = -γ - 2 ln 2 + Σ_{j=1}^{m} 2/(2j-1)
        let m = twice / 2;
        let odd = (1..=m).fold(T::zero(), |acc, j| acc + T::lit(2.0) / T::count(2 * j - 1));
        -euler - T::lit(2.0) * T::LN_2() + odd
    }
}
