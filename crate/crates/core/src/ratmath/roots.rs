use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Poly1, Rational};
use crate::error::{Error, Result};

fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(q.numer())?, root(q.denom())?))
}

/// Distinct rational roots of a polynomial of degree at most 2, ascending.
///
/// A quadratic with irrational (or non-real) roots is an error, never an
/// approximation.
pub fn rational_roots(p: &Poly1<Rational>) -> Result<Vec<Rational>> {
    match p.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Ok(vec![]),
        Some(1) => Ok(vec![-p.coeff(0) / p.coeff(1)]),
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let four = Rational::from_integer(4.into());
            let disc = &b * &b - four * &a * &c;
            let sq = exact_sqrt(&disc).ok_or_else(|| Error::IrrationalBreakpoint(p.to_string()))?;
            let two_a = &a + &a;
            let mut r = vec![(-&b - &sq) / &two_a, (-&b + &sq) / &two_a];
            r.sort();
            r.dedup();
            if sq.is_zero() {
                r.truncate(1);
            }
            Ok(r)
        }
        Some(d) => Err(Error::DegreeTooHigh(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat};

    fn p(c: &[i64]) -> Poly1 {
        Poly1::new('v', c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn examples() {
        assert_eq!(rational_roots(&p(&[-4, 0, 1])).unwrap(), vec![int(-2), int(2)]);
        // 2(2v-2)(v-2) = 4v^2 - 12v + 8
        assert_eq!(rational_roots(&p(&[8, -12, 4])).unwrap(), vec![int(1), int(2)]);
        assert!(matches!(
            rational_roots(&p(&[-2, 0, 1])),
            Err(Error::IrrationalBreakpoint(_))
        ));
    }

    #[test]
    fn edge_cases() {
        assert_eq!(rational_roots(&p(&[1, -2, 1])).unwrap(), vec![int(1)]);
        assert_eq!(rational_roots(&p(&[3])).unwrap(), vec![]);
        assert_eq!(rational_roots(&p(&[-5, 4])).unwrap(), vec![rat(5, 4)]);
        assert_eq!(rational_roots(&p(&[])), Err(Error::ZeroPolynomial));
        assert_eq!(rational_roots(&p(&[1, 0, 0, 1])), Err(Error::DegreeTooHigh(3)));
        assert!(rational_roots(&p(&[1, 0, 1])).is_err());
        let frac = Poly1::new('v', vec![rat(-1, 9), int(0), int(1)]);
        assert_eq!(rational_roots(&frac).unwrap(), vec![rat(-1, 3), rat(1, 3)]);
    }
}
