//! Scalar field abstraction.
//!
//! The exterior calculus, the Chevalley–Eilenberg differential and the torsion
//! extraction only use field operations, so they are written against the
//! [`Scalar`] bound. Everything that needs integrality or exact equality of
//! certificates is pinned to [`Rational`].

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// Arbitrary precision rational number in reduced form with positive denominator.
pub type Rational = BigRational;

/// Field of coefficients for forms.
///
/// Implemented for every type with the usual `num-traits` field structure,
/// e.g. [`Rational`], `num_rational::Ratio<i64>` or `f64`.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Embeds a machine integer.
    fn int(v: i64) -> Self {
        Self::from_i64(v).expect("integer is representable in the scalar field")
    }
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Debug + Display + Num + Signed + FromPrimitive + Send + Sync + 'static
{
}

/// Builds the rational `p/q`.
///
/// # Panics
///
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Converts an integral rational to `i64`, if it is integral and fits.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}
