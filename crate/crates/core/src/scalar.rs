//! Scalar field abstraction shared by the polynomial and linear-algebra code.

use std::fmt::Debug;
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// A commutative field with exact (or, for floats, best-effort) arithmetic.
///
/// Everything in `ratmath`, `linalg` and the multivariate polynomial code is
/// written against this trait. The exact computations instantiate it with
/// [`BigRational`]; numeric oracles use `f64`; point checks that need the
/// imaginary unit use `Complex<BigRational>`.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
}

/// A field with a total order compatible with its arithmetic.
pub trait OrderedField: Field + PartialOrd {}

impl<T: Field + PartialOrd> OrderedField for T {}

impl Field for f64 {
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Field for f32 {
    fn from_int(n: i64) -> Self {
        n as f32
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Field for Complex<BigRational> {
    fn from_int(n: i64) -> Self {
        Complex::new(BigRational::from_int(n), BigRational::zero())
    }
    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }
}

/// The Gaussian rationals `Q(i)`.
pub type GaussianRational = Complex<BigRational>;

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_squares<F: Field>(n: i64) -> F {
        (1..=n).fold(F::zero(), |acc, k| acc + F::from_int(k) * F::from_int(k))
    }

    #[test]
    fn generic_code_runs_over_every_instance() {
        assert_eq!(sum_of_squares::<f64>(4), 30.0);
        assert_eq!(sum_of_squares::<BigRational>(4), BigRational::from_int(30));
        let i = GaussianRational::new(BigRational::zero(), BigRational::one());
        assert_eq!(i.clone() * i, GaussianRational::from_int(-1));
    }
}
