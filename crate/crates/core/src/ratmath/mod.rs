//! Exact rationals, uni- and bivariate polynomials, and definite integration.

mod integrate;
mod poly1;
mod poly2;
mod ratfunc;
mod roots;

pub use integrate::{integrate_region, integrate_univariate};
pub use poly1::{interpolate, Poly1};
pub use poly2::Poly2;
pub use ratfunc::RatFunc;
pub use roots::rational_roots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical `p/q` or `p` text form. No whitespace, no decimals.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = |msg: &str| Error::parse(0, format!("malformed rational `{text}`: {msg}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("numerator must be an optionally signed integer"));
    }
    let n: BigInt = num.parse().map_err(|_| bad("numerator"))?;
    let d: BigInt = match den {
        None => BigInt::from(1),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("denominator must be a positive integer"));
            }
            d.parse().map_err(|_| bad("denominator"))?
        }
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Lossy conversion used by numeric oracles only.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Writes `c*m` as a signed term of a sum, e.g. `+ 3/2*u^2`, `- v`, `+ 7`.
pub(crate) fn push_term(out: &mut String, c: &Rational, monomial: &str) {
    let first = out.is_empty();
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let unit = mag == int(1);
    match (monomial.is_empty(), unit) {
        (true, _) => out.push_str(&mag.to_string()),
        (false, true) => out.push_str(monomial),
        (false, false) => {
            out.push_str(&mag.to_string());
            out.push('*');
            out.push_str(monomial);
        }
    }
}

pub(crate) fn power(var: &str, exp: usize) -> String {
    match exp {
        0 => String::new(),
        1 => var.to_string(),
        e => format!("{var}^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for (text, val) in [("3/2", rat(3, 2)), ("-7", int(-7)), ("0", int(0)), ("6/4", rat(3, 2))] {
            assert_eq!(parse_rational(text).unwrap(), val);
        }
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(int(5).to_string(), "5");
    }

    #[test]
    fn rational_text_rejects_decimals_and_spaces() {
        for bad in ["1.5", " 3", "3 /2", "3/", "/2", "3/0", "--1", "1/-2", ""] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }
}
