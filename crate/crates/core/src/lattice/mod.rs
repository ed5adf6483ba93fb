//! Divisor classes over named lattice bases, and the bilinear/trilinear forms on them.

mod forms;
pub mod presets;

pub use forms::{CurvePairing, RestrictionMap, SurfaceForm, SurfaceModel, ThreefoldForm, ThreefoldModel};

use std::fmt;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{push_term, Poly1, Poly2, Rational};

/// Ordered, duplicate-free list of generator names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    names: Vec<String>,
}

impl LatticeBasis {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateGenerator(n.clone()));
            }
        }
        Ok(Arc::new(LatticeBasis { names }))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub(crate) fn check(&self, other: &LatticeBasis) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(", "))
    }
}

/// Scalars a divisor class may carry: rationals, or polynomials in `u`, `v`.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    const KIND: &'static str;
    fn from_rational(q: Rational) -> Self;
    /// Text accepted by the divisor-expression parser as a coefficient.
    fn coeff_text(&self) -> String;
    fn as_rational(&self) -> Option<Rational>;
}

impl Coefficient for Rational {
    const KIND: &'static str = "rational";
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn coeff_text(&self) -> String {
        self.to_string()
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coefficient for Poly1<Rational> {
    const KIND: &'static str = "univariate polynomial";
    fn from_rational(q: Rational) -> Self {
        Poly1::constant('u', q)
    }
    fn coeff_text(&self) -> String {
        format!("({self})")
    }
    fn as_rational(&self) -> Option<Rational> {
        self.is_constant().then(|| self.coeff(0))
    }
}

impl Coefficient for Poly2<Rational> {
    const KIND: &'static str = "bivariate polynomial";
    fn from_rational(q: Rational) -> Self {
        Poly2::constant(q)
    }
    fn coeff_text(&self) -> String {
        format!("({self})")
    }
    fn as_rational(&self) -> Option<Rational> {
        self.as_constant()
    }
}

/// A class `sum_i c_i * g_i` over a basis, with coefficients of one kind.
#[derive(Clone, Debug)]
pub struct DivisorClass<R = Rational> {
    basis: Arc<LatticeBasis>,
    coeffs: Vec<R>,
}

impl<R: Coefficient> PartialEq for DivisorClass<R> {
    fn eq(&self, other: &Self) -> bool {
        *self.basis == *other.basis && self.coeffs == other.coeffs
    }
}

impl<R: Coefficient> DivisorClass<R> {
    pub fn new(basis: &Arc<LatticeBasis>, coeffs: Vec<R>) -> Result<Self> {
        if coeffs.len() != basis.rank() {
            return Err(Error::BasisMismatch {
                expected: basis.to_string(),
                found: format!("{} coefficients", coeffs.len()),
            });
        }
        Ok(DivisorClass {
            basis: basis.clone(),
            coeffs,
        })
    }

    pub fn zero(basis: &Arc<LatticeBasis>) -> Self {
        DivisorClass {
            basis: basis.clone(),
            coeffs: vec![R::zero(); basis.rank()],
        }
    }

    /// The class of a single generator.
    pub fn generator(basis: &Arc<LatticeBasis>, name: &str) -> Result<Self> {
        let i = basis
            .index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        let mut c = Self::zero(basis);
        c.coeffs[i] = R::one();
        Ok(c)
    }

    /// Builds a class from `(name, coefficient)` pairs; repeated names accumulate.
    pub fn from_terms(basis: &Arc<LatticeBasis>, terms: &[(&str, R)]) -> Result<Self> {
        let mut c = Self::zero(basis);
        for (name, v) in terms {
            let i = basis
                .index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            c.coeffs[i] = c.coeffs[i].clone() + v.clone();
        }
        Ok(c)
    }

    pub fn basis(&self) -> &Arc<LatticeBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Option<&R> {
        self.basis.index(name).map(|i| &self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &R) -> Self {
        self.map(|c| c.clone() * k.clone())
    }

    pub fn map<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> DivisorClass<S> {
        DivisorClass {
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Converts every coefficient into a richer kind.
    pub fn promote<S: Coefficient + From<R>>(&self) -> DivisorClass<S> {
        self.map(|c| S::from(c.clone()))
    }

    /// Narrows to rational coefficients, failing if any coefficient is non-constant.
    pub fn to_rational(&self) -> Result<DivisorClass<Rational>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.as_rational().ok_or(Error::CoefficientKind("rational")))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass {
            basis: self.basis.clone(),
            coeffs,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.basis.check(&other.basis)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.basis.check(&other.basis)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, op: impl Fn(R, R) -> R) -> Self {
        DivisorClass {
            basis: self.basis.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| op(a.clone(), b.clone()))
                .collect(),
        }
    }
}

impl DivisorClass<Poly1<Rational>> {
    pub fn eval(&self, x: &Rational) -> DivisorClass<Rational> {
        self.map(|c| c.eval(x))
    }
}

impl DivisorClass<Poly2<Rational>> {
    pub fn eval(&self, u: &Rational, v: &Rational) -> DivisorClass<Rational> {
        self.map(|c| c.eval(u, v))
    }

    /// Fixes `u`, leaving coefficients in `v`.
    pub fn eval_u(&self, u: &Rational) -> DivisorClass<Poly1<Rational>> {
        self.map(|c| c.eval_u(u))
    }

    /// Narrows to polynomials in `u`, failing if any coefficient involves `v`.
    pub fn to_poly_u(&self) -> Result<DivisorClass<Poly1<Rational>>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.as_poly_u().ok_or(Error::CoefficientKind("polynomial in u")))
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorClass {
            basis: self.basis.clone(),
            coeffs,
        })
    }
}

impl From<Rational> for Poly1<Rational> {
    fn from(q: Rational) -> Self {
        Poly1::constant('u', q)
    }
}

impl From<Rational> for Poly2<Rational> {
    fn from(q: Rational) -> Self {
        Poly2::constant(q)
    }
}

impl From<Poly1<Rational>> for Poly2<Rational> {
    fn from(p: Poly1<Rational>) -> Self {
        if p.variable() == 'v' {
            Poly2::from_v(&p)
        } else {
            Poly2::from_u(&p)
        }
    }
}

/// Panics on a basis mismatch; use [`DivisorClass::try_add`] for a checked sum.
impl<R: Coefficient> Add for &DivisorClass<R> {
    type Output = DivisorClass<R>;
    fn add(self, rhs: &DivisorClass<R>) -> DivisorClass<R> {
        self.try_add(rhs).expect("adding classes over different bases")
    }
}

impl<R: Coefficient> Sub for &DivisorClass<R> {
    type Output = DivisorClass<R>;
    fn sub(self, rhs: &DivisorClass<R>) -> DivisorClass<R> {
        self.try_sub(rhs).expect("subtracting classes over different bases")
    }
}

impl<R: Coefficient> Neg for &DivisorClass<R> {
    type Output = DivisorClass<R>;
    fn neg(self) -> DivisorClass<R> {
        self.map(|c| -c.clone())
    }
}

impl<R: Coefficient> Add for DivisorClass<R> {
    type Output = DivisorClass<R>;
    fn add(self, rhs: DivisorClass<R>) -> DivisorClass<R> {
        &self + &rhs
    }
}

impl<R: Coefficient> Sub for DivisorClass<R> {
    type Output = DivisorClass<R>;
    fn sub(self, rhs: DivisorClass<R>) -> DivisorClass<R> {
        &self - &rhs
    }
}

impl<R: Coefficient> Neg for DivisorClass<R> {
    type Output = DivisorClass<R>;
    fn neg(self) -> DivisorClass<R> {
        -&self
    }
}

impl<R: Coefficient> fmt::Display for DivisorClass<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, name) in self.coeffs.iter().zip(self.basis.names()) {
            if c.is_zero() {
                continue;
            }
            match c.as_rational() {
                Some(q) => push_term(&mut out, &q, name),
                None => {
                    if !out.is_empty() {
                        out.push_str(" + ");
                    }
                    out.push_str(&c.coeff_text());
                    out.push('*');
                    out.push_str(name);
                }
            }
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

    #[test]
    fn basis_rejects_duplicates() {
        assert_eq!(
            LatticeBasis::new(&["H", "EC", "H"]).unwrap_err(),
            Error::DuplicateGenerator("H".into())
        );
    }

    #[test]
    fn class_arithmetic_and_display() {
        let b = LatticeBasis::new(&["H", "EC", "EL"]).unwrap();
        let k = DivisorClass::new(&b, vec![int(4), int(-1), int(-1)]).unwrap();
        let r = DivisorClass::from_terms(&b, &[("H", int(4)), ("EC", int(-2)), ("EL", int(-1))]).unwrap();
        assert_eq!(k.to_string(), "4*H - EC - EL");
        assert_eq!((&k - &r).to_string(), "EC");
        assert_eq!(r.scale(&rat(1, 2)).to_string(), "2*H - EC - 1/2*EL");
        assert_eq!(DivisorClass::<Rational>::zero(&b).to_string(), "0");
        let other = LatticeBasis::new(&["s", "l"]).unwrap();
        assert!(matches!(
            k.try_add(&DivisorClass::zero(&other)),
            Err(Error::BasisMismatch { .. })
        ));
    }

    #[test]
    fn polynomial_coefficients_print_parenthesized() {
        let b = LatticeBasis::new(&["H", "R"]).unwrap();
        let c: DivisorClass<Poly1> = DivisorClass::new(
            &b,
            vec![Poly1::constant('u', int(2)), Poly1::linear('u', int(1), int(-1))],
        )
        .unwrap();
        assert_eq!(c.to_string(), "2*H + (u - 1)*R");
        assert_eq!(c.eval(&int(3)).to_string(), "2*H + 2*R");
        assert!(c.to_rational().is_err());
    }
}
