use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly1, Rational};
use crate::scalar::Field;

/// Element of the rational function field `Q(s)`, kept reduced with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: Poly1<Rational>,
    den: Poly1<Rational>,
}

impl RatFunc {
    pub const VAR: char = 's';

    /// Panics if `den` is zero.
    pub fn new(num: Poly1<Rational>, den: Poly1<Rational>) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        let num = num.with_var(Self::VAR);
        let den = den.with_var(Self::VAR);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = Poly1::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading();
        RatFunc {
            num: n.scale(&(Rational::one() / &lead)),
            den: d.monic(),
        }
    }

    pub fn poly(p: Poly1<Rational>) -> Self {
        RatFunc::new(p, Poly1::constant(Self::VAR, Rational::one()))
    }

    pub fn s() -> Self {
        RatFunc::poly(Poly1::var(Self::VAR))
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::poly(Poly1::constant(Self::VAR, c))
    }

    pub fn numer(&self) -> &Poly1<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly1<Rational> {
        &self.den
    }

    /// `None` at a pole.
    pub fn eval(&self, s: &Rational) -> Option<Rational> {
        let d = self.den.eval(s);
        (!d.is_zero()).then(|| self.num.eval(s) / d)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly1::zero_in(Self::VAR),
            den: Poly1::constant(Self::VAR, Rational::one()),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::constant(Rational::one())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Field for RatFunc {
    fn from_int(n: i64) -> Self {
        RatFunc::constant(Rational::from_int(n))
    }
    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly1<Rational>| {
            let t = p.to_string();
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({t})")
            } else {
                t
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::int;

    #[test]
    fn reduces_and_prints() {
        let s = RatFunc::s();
        let one = RatFunc::one();
        let x = (s.clone() * s.clone() + one.clone()) / s.clone();
        assert_eq!(x.to_string(), "(s^2 + 1)/s");
        assert_eq!(x.clone() * s.clone() - s.clone() * s.clone(), one);
        let minus_inv = -(one.clone() / s.clone());
        assert_eq!(minus_inv.to_string(), "-1/s");
        assert_eq!(minus_inv.eval(&int(2)), Some(Rational::new((-1).into(), 2.into())));
        assert_eq!(minus_inv.eval(&int(0)), None);
    }
}
