use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{power, push_term, Rational};
use crate::scalar::Field;

/// Dense univariate polynomial; `coeffs[k]` multiplies `var^k`.
///
/// The variable name is a label only. Arithmetic between polynomials with
/// different labels keeps the label of the non-constant operand.
#[derive(Clone, Debug)]
pub struct Poly1<T = Rational> {
    var: char,
    coeffs: Vec<T>,
}

impl<T: Field> PartialEq for Poly1<T> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && (self.var == other.var || self.coeffs.len() <= 1)
    }
}

impl<T: Field + Eq> Eq for Poly1<T> {}

impl<T: Field> Poly1<T> {
    pub fn new(var: char, mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { var, coeffs }
    }

    pub fn zero_in(var: char) -> Self {
        Poly1 { var, coeffs: vec![] }
    }

    pub fn constant(var: char, c: T) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var` itself.
    pub fn var(var: char) -> Self {
        Self::new(var, vec![T::zero(), T::one()])
    }

    /// `slope * var + intercept`.
    pub fn linear(var: char, slope: T, intercept: T) -> Self {
        Self::new(var, vec![intercept, slope])
    }

    pub fn variable(&self) -> char {
        self.var
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_int(k as i64))
            .collect();
        Self::new(self.var, coeffs)
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_int(k as i64 + 1));
        }
        Self::new(self.var, coeffs)
    }

    /// `self(inner)`; the result carries `inner`'s variable.
    pub fn compose(&self, inner: &Poly1<T>) -> Self {
        let mut acc = Poly1::zero_in(inner.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly1::constant(inner.var, c.clone());
        }
        acc.with_var(inner.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Poly1::constant(self.var, T::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly1<T>) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (Poly1::zero_in(self.var), self.clone());
        }
        let mut q = vec![T::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (Poly1::new(self.var, q), Poly1::new(self.var, rem))
    }

    pub fn monic(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let inv = T::one() / self.leading();
        self.scale(&inv)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(a: &Poly1<T>, b: &Poly1<T>) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }
}

/// Lagrange interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
pub fn interpolate<T: Field>(var: char, points: &[(T, T)]) -> Poly1<T> {
    let mut out = Poly1::zero_in(var);
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = Poly1::constant(var, yi.clone());
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let denom = xi.clone() - xj.clone();
                let factor = Poly1::linear(var, T::one() / denom.clone(), -(xj.clone() / denom));
                basis = &basis * &factor;
            }
        }
        out = &out + &basis;
    }
    out
}

fn pick_var<T: Field>(a: &Poly1<T>, b: &Poly1<T>) -> char {
    if a.is_constant() {
        b.var
    } else {
        a.var
    }
}

impl<T: Field> Zero for Poly1<T> {
    fn zero() -> Self {
        Poly1::zero_in('u')
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Field> One for Poly1<T> {
    fn one() -> Self {
        Poly1::constant('u', T::one())
    }
}

impl<T: Field> Add for &Poly1<T> {
    type Output = Poly1<T>;
    fn add(self, rhs: &Poly1<T>) -> Poly1<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly1::new(pick_var(self, rhs), coeffs)
    }
}

impl<T: Field> Sub for &Poly1<T> {
    type Output = Poly1<T>;
    fn sub(self, rhs: &Poly1<T>) -> Poly1<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly1::new(pick_var(self, rhs), coeffs)
    }
}

impl<T: Field> Mul for &Poly1<T> {
    type Output = Poly1<T>;
    fn mul(self, rhs: &Poly1<T>) -> Poly1<T> {
        let var = pick_var(self, rhs);
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly1::zero_in(var);
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly1::new(var, coeffs)
    }
}

impl<T: Field> Neg for &Poly1<T> {
    type Output = Poly1<T>;
    fn neg(self) -> Poly1<T> {
        Poly1::new(self.var, self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($ty:ident, $($tr:ident :: $m:ident),*) => {$(
        impl<T: Field> $tr for $ty<T> {
            type Output = $ty<T>;
            fn $m(self, rhs: $ty<T>) -> $ty<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Poly1, Add::add, Sub::sub, Mul::mul);

impl<T: Field> Neg for Poly1<T> {
    type Output = Poly1<T>;
    fn neg(self) -> Poly1<T> {
        -&self
    }
}

impl fmt::Display for Poly1<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let var = self.var.to_string();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                push_term(&mut out, c, &power(&var, k));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
