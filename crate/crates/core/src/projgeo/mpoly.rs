use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{push_term, Poly1, Rational};
use crate::scalar::Field;

/// Exponents keyed by variable name. Zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(name: &str, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(name.to_string(), exp);
        }
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(&str, u32)]) -> Self {
        pairs
            .iter()
            .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var(v, *e)))
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn degree_in(&self, vars: &[&str]) -> u32 {
        vars.iter().map(|v| self.exponent(v)).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (k, e) in &other.0 {
            *m.entry(k.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// Splits into the part in `vars` and the rest.
    pub fn split(&self, vars: &[&str]) -> (Monomial, Monomial) {
        let (inside, outside): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .0
            .iter()
            .map(|(k, e)| (k.clone(), *e))
            .partition(|(k, _)| vars.contains(&k.as_str()));
        (Monomial(inside), Monomial(outside))
    }
}

/// Graded: higher total degree first, then lexicographic on the variable names.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree().cmp(&self.degree()).then_with(|| {
            let a: Vec<_> = self.0.iter().collect();
            let b: Vec<_> = other.0.iter().collect();
            // x0^2 before x0*x1: larger leading exponent first
            for ((ka, ea), (kb, eb)) in a.iter().zip(&b) {
                match ka.cmp(kb) {
                    Ordering::Equal => match eb.cmp(ea) {
                        Ordering::Equal => continue,
                        o => return o,
                    },
                    o => return o,
                }
            }
            b.len().cmp(&a.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, e)| if *e == 1 { k.clone() } else { format!("{k}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Sparse polynomial over named variables.
///
/// Coordinates `x0..x3` and parameters such as `s`, `t`, `a1..a6` live in the
/// same ring; homogeneity is checked against whichever subset the caller
/// names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly<T: Field = Rational> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Field> MPoly<T> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(name: &str) -> Self {
        Self::term(T::one(), Monomial::var(name, 1))
    }

    pub fn term(c: T, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    /// Leading term in the graded order.
    pub fn leading(&self) -> Option<(&Monomial, &T)> {
        self.terms.iter().next()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.vars().map(|(k, _)| k.to_string()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn scale(&self, c: &T) -> Self {
        MPoly::from_terms(self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(MPoly::constant(T::one()), |acc, _| &acc * self)
    }

    /// Common degree in `vars` of every term, or `None` for the zero polynomial.
    pub fn homogeneous_degree(&self, vars: &[&str]) -> Result<Option<u32>> {
        let mut degs = self.terms.keys().map(|m| m.degree_in(vars));
        let Some(d) = degs.next() else {
            return Ok(None);
        };
        if degs.all(|e| e == d) {
            Ok(Some(d))
        } else {
            Err(Error::NotHomogeneous(vars.join(", ")))
        }
    }

    /// Simultaneous substitution; variables without an entry stay put.
    pub fn subst(&self, map: &BTreeMap<&str, MPoly<T>>) -> Self {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (v, e) in m.vars() {
                let f = match map.get(v) {
                    Some(g) => g.pow(e),
                    None => MPoly::term(T::one(), Monomial::var(v, e)),
                };
                t = &t * &f;
            }
            out = &out + &t;
        }
        out
    }

    /// Groups terms by their monomial in `vars`; the values are polynomials in the remaining variables.
    pub fn coefficients_in(&self, vars: &[&str]) -> BTreeMap<Monomial, MPoly<T>> {
        let mut out: BTreeMap<Monomial, MPoly<T>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(vars);
            out.entry(inside).or_insert_with(MPoly::zero).add_term(outside, c.clone());
        }
        out
    }

    pub fn map_coeffs<S: Field>(&self, f: impl Fn(&T) -> S) -> MPoly<S> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Partial derivative.
    pub fn derivative(&self, var: &str) -> Self {
        MPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(var);
            (e > 0).then(|| {
                let (_, rest) = m.split(&[var]);
                (rest.mul(&Monomial::var(var, e - 1)), c.clone() * T::from_int(e as i64))
            })
        }))
    }
}

impl MPoly<Rational> {
    /// Evaluates at a full assignment into any field containing Q.
    pub fn eval<F: Field>(&self, values: &BTreeMap<&str, F>) -> Result<F> {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c);
            for (v, e) in m.vars() {
                let x = values
                    .get(v)
                    .ok_or_else(|| Error::UnknownGenerator(v.to_string()))?;
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn from_poly1(p: &Poly1<Rational>, var: &str) -> Self {
        MPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(var, k as u32), c.clone())),
        )
    }

    /// The univariate polynomial in `var`, failing if any other variable occurs.
    pub fn to_poly1(&self, var: &str) -> Result<Poly1<Rational>> {
        let label = var.chars().next().unwrap_or('s');
        let mut coeffs = vec![];
        for (m, c) in &self.terms {
            if m.degree_in(&[var]) != m.degree() {
                return Err(Error::NotHomogeneous(format!("{self} is not univariate in {var}")));
            }
            let k = m.exponent(var) as usize;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] = c.clone();
        }
        Ok(Poly1::new(label, coeffs))
    }

    /// `self = c * other` for some nonzero rational `c`.
    pub fn proportional(&self, other: &MPoly<Rational>) -> Option<Rational> {
        let (m, a) = self.leading()?;
        let b = other.coeff(m);
        if b.is_zero() {
            return None;
        }
        let c = a / &b;
        (*self == other.scale(&c)).then_some(c)
    }
}

impl<T: Field> Zero for MPoly<T> {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Field> One for MPoly<T> {
    fn one() -> Self {
        MPoly::constant(T::one())
    }
}

impl<'a, T: Field> Add<&'a MPoly<T>> for &'a MPoly<T> {
    type Output = MPoly<T>;
    fn add(self, rhs: &MPoly<T>) -> MPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a, T: Field> Sub<&'a MPoly<T>> for &'a MPoly<T> {
    type Output = MPoly<T>;
    fn sub(self, rhs: &MPoly<T>) -> MPoly<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a, T: Field> Mul<&'a MPoly<T>> for &'a MPoly<T> {
    type Output = MPoly<T>;
    fn mul(self, rhs: &MPoly<T>) -> MPoly<T> {
        let mut out = MPoly::zero();
        for (ma, a) in &self.terms {
            for (mb, b) in &rhs.terms {
                out.add_term(ma.mul(mb), a.clone() * b.clone());
            }
        }
        out
    }
}

impl<T: Field> Neg for &MPoly<T> {
    type Output = MPoly<T>;
    fn neg(self) -> MPoly<T> {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())))
    }
}

impl<T: Field> Add for MPoly<T> {
    type Output = MPoly<T>;
    fn add(self, rhs: MPoly<T>) -> MPoly<T> {
        &self + &rhs
    }
}

impl<T: Field> Sub for MPoly<T> {
    type Output = MPoly<T>;
    fn sub(self, rhs: MPoly<T>) -> MPoly<T> {
        &self - &rhs
    }
}

impl<T: Field> Mul for MPoly<T> {
    type Output = MPoly<T>;
    fn mul(self, rhs: MPoly<T>) -> MPoly<T> {
        &self * &rhs
    }
}

impl<T: Field> Neg for MPoly<T> {
    type Output = MPoly<T>;
    fn neg(self) -> MPoly<T> {
        -&self
    }
}

impl fmt::Display for MPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (m, c) in &self.terms {
            push_term(&mut out, c, &m.to_string());
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

/// Shorthand for `MPoly::var`.
pub fn mvar(name: &str) -> MPoly<Rational> {
    MPoly::var(name)
}

/// Shorthand for an integer constant.
pub fn mint(n: i64) -> MPoly<Rational> {
    MPoly::constant(Rational::from_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::int;

    fn x(i: usize) -> MPoly {
        mvar(&format!("x{i}"))
    }

    #[test]
    fn arithmetic_and_display() {
        let q1 = &(&x(0) * &x(3)) - &(&x(1) * &x(2));
        assert_eq!(q1.to_string(), "x0*x3 - x1*x2");
        let sq = q1.pow(2);
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.to_string(), "x0^2*x3^2 - 2*x0*x1*x2*x3 + x1^2*x2^2");
        assert!((&q1 - &q1).is_zero());
        assert_eq!(mint(0).to_string(), "0");
    }

    #[test]
    fn homogeneity() {
        let f = &(&x(0) * &mvar("s")) + &x(2);
        assert_eq!(f.homogeneous_degree(&["x0", "x1", "x2", "x3"]).unwrap(), Some(1));
        assert!(f.homogeneous_degree(&["x0", "x1", "x2", "x3", "s"]).is_err());
        assert_eq!(MPoly::<Rational>::zero().homogeneous_degree(&["x0"]).unwrap(), None);
    }

    #[test]
    fn substitution_and_collection() {
        // (p + s q)^2 collected in p, q
        let f = (&mvar("p") + &(&mvar("s") * &mvar("q"))).pow(2);
        let c = f.coefficients_in(&["p", "q"]);
        assert_eq!(c[&Monomial::from_pairs(&[("p", 1), ("q", 1)])], mvar("s").scale(&int(2)));
        let mut map = BTreeMap::new();
        map.insert("s", mint(1));
        let g = f.subst(&map);
        assert_eq!(g, (&mvar("p") + &mvar("q")).pow(2));
    }

    #[test]
    fn univariate_round_trip() {
        let p = Poly1::new('s', vec![int(1), int(0), int(1)]);
        let m = MPoly::from_poly1(&p, "s");
        assert_eq!(m.to_poly1("s").unwrap(), p);
        assert!((&m + &mvar("t")).to_poly1("s").is_err());
    }

    #[test]
    fn derivative_and_proportionality() {
        let f = &x(0).pow(3) + &(&x(0) * &x(1));
        assert_eq!(f.derivative("x0"), &x(0).pow(2).scale(&int(3)) + &x(1));
        assert_eq!(f.scale(&int(-2)).proportional(&f), Some(int(-2)));
        assert_eq!(f.proportional(&x(0)), None);
    }
}
