//! Scalar abstraction shared by every numeric module.
//!
//! All formulas are written once against [`Scalar`] and instantiated for
//! `f32` and `f64`. The moduli produced by the composition formulas get very
//! small very quickly (twelfth powers of ε are routine), so `f64` is the
//! working precision; `f32` is supported but will underflow to zero for
//! the nested moduli.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type usable by the whole crate.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Sum
    + Send
    + Sync
    + serde::Serialize
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::lit(2.0)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for [`Scalar::lit`].
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::lit(x)
}

/// Relative closeness used by invariants that are stated "within tolerance".
pub fn rel_close<T: Scalar>(a: T, b: T, rel: T) -> bool {
    let scale = a.abs().max(b.abs()).max(T::one());
    (a - b).abs() <= rel * scale
}

/// Bisection for the smallest `t` in `[lo, hi]` where `pred` holds, assuming
/// `pred(hi)` and that `pred` is monotone (false then true). Returns the
/// final `(lo, hi)` bracket; `hi` always satisfies `pred`.
pub fn bisect_threshold<T: Scalar, F: Fn(T) -> bool>(
    mut lo: T,
    mut hi: T,
    rel_tol: T,
    pred: F,
) -> (T, T) {
    for _ in 0..400 {
        if hi - lo <= rel_tol * hi.abs().max(T::min_positive_value()) {
            break;
        }
        let mid = lo + (hi - lo) * T::half();
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_brackets_sqrt_two() {
        let (lo, hi) = bisect_threshold(0.0_f64, 2.0, 1e-14, |t| t * t >= 2.0);
        assert!(lo * lo < 2.0 && hi * hi >= 2.0);
        assert!((hi - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn literals_roundtrip_for_both_widths() {
        assert_eq!(lit::<f32>(0.25), 0.25_f32);
        assert_eq!(lit::<f64>(0.25), 0.25_f64);
        assert!(rel_close(1.0_f64, 1.0 + 1e-13, 1e-12));
    }
}
