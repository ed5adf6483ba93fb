use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly1::forward_owned;
use super::{power, push_term, Poly1, Rational};
use crate::scalar::Field;

/// Dense bivariate polynomial in `u`, `v`; `coeffs[i][j]` multiplies `u^i v^j`.
///
/// Trailing zero entries of every row and trailing empty rows are trimmed, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<T = Rational> {
    coeffs: Vec<Vec<T>>,
}

impl<T: Field + Eq> Eq for Poly2<T> {}

impl<T: Field> Poly2<T> {
    pub fn new(mut coeffs: Vec<Vec<T>>) -> Self {
        for row in coeffs.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while coeffs.last().is_some_and(|r| r.is_empty()) {
            coeffs.pop();
        }
        Poly2 { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![vec![c]])
    }

    pub fn u() -> Self {
        Self::new(vec![vec![], vec![T::one()]])
    }

    pub fn v() -> Self {
        Self::new(vec![vec![T::zero(), T::one()]])
    }

    /// Embeds a polynomial in `u`.
    pub fn from_u(p: &Poly1<T>) -> Self {
        Self::new(p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    /// Embeds a polynomial in `v`.
    pub fn from_v(p: &Poly1<T>) -> Self {
        Self::new(vec![p.coeffs().to_vec()])
    }

    /// Builds `sum_j c_j(u) v^j` from polynomials in `u`.
    pub fn from_v_coeffs(cs: &[Poly1<T>]) -> Self {
        let mut out = Poly2::zero();
        let mut vj = Poly2::one();
        for c in cs {
            out = &out + &(&Poly2::from_u(c) * &vj);
            vj = &vj * &Poly2::v();
        }
        out
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn deg_u(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_v(&self) -> Option<usize> {
        self.coeffs.iter().map(|r| r.len()).max().and_then(|n| n.checked_sub(1))
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        let mut best = None;
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    best = Some(best.map_or(i + j, |b: usize| b.max(i + j)));
                }
            }
        }
        best
    }

    pub fn eval(&self, u: &T, v: &T) -> T {
        self.eval_u(u).eval(v)
    }

    /// Fixes `u`, leaving a polynomial in `v`.
    pub fn eval_u(&self, u: &T) -> Poly1<T> {
        let n = self.deg_v().map_or(0, |d| d + 1);
        let mut out = vec![T::zero(); n];
        let mut upow = T::one();
        for row in &self.coeffs {
            for (j, c) in row.iter().enumerate() {
                out[j] = out[j].clone() + c.clone() * upow.clone();
            }
            upow = upow * u.clone();
        }
        Poly1::new('v', out)
    }

    /// Fixes `v`, leaving a polynomial in `u`.
    pub fn eval_v(&self, v: &T) -> Poly1<T> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| Poly1::new('v', row.clone()).eval(v))
            .collect();
        Poly1::new('u', coeffs)
    }

    /// The coefficient of `v^j` as a polynomial in `u`.
    pub fn v_coeff(&self, j: usize) -> Poly1<T> {
        Poly1::new('u', (0..self.coeffs.len()).map(|i| self.coeff(i, j)).collect())
    }

    /// Substitutes `v := g(u)`.
    pub fn subst_v(&self, g: &Poly1<T>) -> Poly1<T> {
        let g = g.clone().with_var('u');
        let dv = self.deg_v().map_or(0, |d| d + 1);
        let mut out = Poly1::zero_in('u');
        let mut gpow = Poly1::constant('u', T::one());
        for j in 0..dv {
            out = &out + &(&self.v_coeff(j) * &gpow);
            gpow = &gpow * &g;
        }
        out.with_var('u')
    }

    /// Substitutes both variables by polynomials in a common variable.
    pub fn subst(&self, gu: &Poly1<T>, gv: &Poly1<T>) -> Poly1<T> {
        let var = if gu.is_constant() { gv.variable() } else { gu.variable() };
        let mut out = Poly1::zero_in(var);
        let mut upow = Poly1::constant(var, T::one());
        for row in &self.coeffs {
            let inner = Poly1::new('v', row.clone()).compose(gv);
            out = &out + &(&inner * &upow);
            upow = &upow * gu;
        }
        out.with_var(var)
    }

    /// Antiderivative in `v` with zero constant term.
    pub fn antiderivative_v(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| Poly1::new('v', row.clone()).antiderivative().coeffs().to_vec())
                .collect(),
        )
    }

    pub fn derivative_v(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|row| Poly1::new('v', row.clone()).derivative().coeffs().to_vec())
                .collect(),
        )
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|a| a.clone() * c.clone()).collect())
                .collect(),
        )
    }

    /// Returns `Some(p)` when this polynomial does not involve `v`.
    pub fn as_poly_u(&self) -> Option<Poly1<T>> {
        (self.deg_v().unwrap_or(0) == 0).then(|| self.v_coeff(0))
    }

    pub fn as_constant(&self) -> Option<T> {
        (self.degree().unwrap_or(0) == 0).then(|| self.coeff(0, 0))
    }
}

impl<T: Field> Zero for Poly2<T> {
    fn zero() -> Self {
        Poly2 { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Field> One for Poly2<T> {
    fn one() -> Self {
        Poly2::constant(T::one())
    }
}

fn combine<T: Field>(a: &Poly2<T>, b: &Poly2<T>, op: impl Fn(T, T) -> T) -> Poly2<T> {
    let rows = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..rows)
        .map(|i| {
            let la = a.coeffs.get(i).map_or(0, |r| r.len());
            let lb = b.coeffs.get(i).map_or(0, |r| r.len());
            (0..la.max(lb)).map(|j| op(a.coeff(i, j), b.coeff(i, j))).collect()
        })
        .collect();
    Poly2::new(coeffs)
}

impl<T: Field> Add for &Poly2<T> {
    type Output = Poly2<T>;
    fn add(self, rhs: &Poly2<T>) -> Poly2<T> {
        combine(self, rhs, |x, y| x + y)
    }
}

impl<T: Field> Sub for &Poly2<T> {
    type Output = Poly2<T>;
    fn sub(self, rhs: &Poly2<T>) -> Poly2<T> {
        combine(self, rhs, |x, y| x - y)
    }
}

impl<T: Field> Mul for &Poly2<T> {
    type Output = Poly2<T>;
    fn mul(self, rhs: &Poly2<T>) -> Poly2<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly2::zero();
        }
        let rows = self.coeffs.len() + rhs.coeffs.len() - 1;
        let cols = self.deg_v().unwrap_or(0) + rhs.deg_v().unwrap_or(0) + 1;
        let mut out = vec![vec![T::zero(); cols]; rows];
        for (i1, r1) in self.coeffs.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, r2) in rhs.coeffs.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        let cell = &mut out[i1 + i2][j1 + j2];
                        *cell = cell.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Poly2::new(out)
    }
}

impl<T: Field> Neg for &Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        self.scale(&-T::one())
    }
}

forward_owned!(Poly2, Add::add, Sub::sub, Mul::mul);

impl<T: Field> Neg for Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        -&self
    }
}

impl fmt::Display for Poly2<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // graded by total degree, then by descending power of u
        let mut terms = vec![];
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i + j, i, j, c));
                }
            }
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)));
        let mut out = String::new();
        for (_, i, j, c) in terms {
            let mono = match (power("u", i), power("v", j)) {
                (a, b) if a.is_empty() => b,
                (a, b) if b.is_empty() => a,
                (a, b) => format!("{a}*{b}"),
            };
            push_term(&mut out, c, &mono);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{int, rat};

    fn lin(cu: i64, cv: i64, c0: i64) -> Poly2 {
        &(&Poly2::u().scale(&int(cu)) + &Poly2::v().scale(&int(cv))) + &Poly2::constant(int(c0))
    }

    #[test]
    fn volume_at_u_equals_one() {
        // 2(3u - 5 + 2v)(4u - 6 + v) restricted to u = 1
        let vol = (&lin(3, 2, -5) * &lin(4, 1, -6)).scale(&int(2));
        let at1 = vol.eval_u(&int(1));
        assert_eq!(at1.eval(&int(1)), int(0));
        assert_eq!(at1.eval(&int(2)), int(0));
        assert_eq!(at1.coeff(2), int(4));
        assert_eq!(vol.to_string(), "24*u^2 + 22*u*v + 4*v^2 - 76*u - 34*v + 60");
    }

    #[test]
    fn substitution_along_a_wall() {
        let vol = &lin(-1, -1, 4) * &lin(-1, -1, 4) - Poly2::constant(int(4));
        let wall = Poly1::linear('u', int(-1), int(2));
        assert_eq!(vol.subst_v(&wall), Poly1::zero_in('u'));
        assert_eq!(vol.eval(&rat(1, 2), &int(1)), rat(9, 4));
    }

    #[test]
    fn trimming_gives_canonical_zero() {
        let a = lin(1, 2, 3);
        assert!((&a - &a).is_zero());
        assert_eq!(Poly2::<Rational>::new(vec![vec![int(0)], vec![]]), Poly2::zero());
    }
}
