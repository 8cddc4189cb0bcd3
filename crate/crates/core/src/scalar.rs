//! Floating-point scalar abstraction used by the bilinear program.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A real scalar the solver can run on.
///
/// Problem data (costs, sizes, interaction weights, bounds) are integers, so
/// every binary-point objective is exact in either precision as long as the
/// totals stay below the mantissa width.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Slack allowed on objective comparisons ("did this sweep improve?").
    fn improvement_tol() -> Self;

    /// Distance from 0 or 1 under which a coordinate counts as binary.
    fn binary_tol() -> Self;

    /// Exact conversion of a small integer datum.
    fn from_count(v: u64) -> Self {
        Self::from_u64(v).expect("integer datum representable as a float")
    }
}

impl Scalar for f64 {
    fn improvement_tol() -> Self {
        1e-9
    }

    fn binary_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn improvement_tol() -> Self {
        1e-4
    }

    fn binary_tol() -> Self {
        1e-6
    }
}

/// True when `v` is within tolerance of 0 or 1.
pub(crate) fn is_binary<T: Scalar>(v: T) -> bool {
    v <= T::binary_tol() || v >= T::one() - T::binary_tol()
}

/// Snap a near-binary value onto exactly 0 or 1, leaving true fractions alone.
pub(crate) fn snap<T: Scalar>(v: T) -> T {
    if v <= T::binary_tol() {
        T::zero()
    } else if v >= T::one() - T::binary_tol() {
        T::one()
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapping() {
        assert_eq!(snap(1e-13_f64), 0.0);
        assert_eq!(snap(1.0_f64 - 1e-13), 1.0);
        assert_eq!(snap(0.5_f64), 0.5);
        assert!(is_binary(0.0_f32) && is_binary(1.0_f32) && !is_binary(0.25_f32));
    }
}
