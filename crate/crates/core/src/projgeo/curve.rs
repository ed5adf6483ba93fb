use std::collections::BTreeMap;

use super::action::COORDS;
use super::mpoly::{mvar, MPoly, Monomial};
use crate::error::{Error, Result};
use crate::ratmath::{Poly1, Rational};

/// A map `P^1 -> P^3`, `[x:y] -> [f0:f1:f2:f3]`, by binary forms of one degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCurve {
    components: [MPoly; 4],
    degree: u32,
}

fn dehomogenize(f: &MPoly) -> Result<Poly1<Rational>> {
    let mut map = BTreeMap::new();
    map.insert("y", MPoly::constant(Rational::from_integer(1.into())));
    f.subst(&map).to_poly1("x")
}

impl ParamCurve {
    pub fn new(components: [MPoly; 4]) -> Result<Self> {
        let mut degree = None;
        for f in &components {
            if f.variables().iter().any(|v| v != "x" && v != "y") {
                return Err(Error::InvalidCurve(format!("`{f}` is not a form in x, y")));
            }
            let d = f
                .homogeneous_degree(&["x", "y"])
                .map_err(|_| Error::InvalidCurve(format!("`{f}` is not homogeneous")))?;
            match (d, degree) {
                (None, _) => {}
                (Some(d), None) => degree = Some(d),
                (Some(d), Some(e)) if d != e => {
                    return Err(Error::InvalidCurve("components of different degree".into()))
                }
                _ => {}
            }
        }
        let degree = degree.ok_or_else(|| Error::InvalidCurve("all components vanish".into()))?;
        // y divides everything iff no component has an x^d term
        let top = Monomial::var("x", degree);
        if degree > 0 && components.iter().all(|f| f.coeff(&top) == Rational::from_integer(0.into())) {
            return Err(Error::InvalidCurve("common factor y".into()));
        }
        let mut g = Poly1::zero_in('x');
        for f in &components {
            g = Poly1::gcd(&g, &dehomogenize(f)?);
        }
        if g.degree().is_some_and(|d| d > 0) {
            return Err(Error::InvalidCurve(format!("common factor {g}")));
        }
        Ok(ParamCurve { components, degree })
    }

    /// `[x:y] -> [x^3 : x^2 y : x y^2 : y^3]`
    pub fn twisted_cubic() -> Self {
        let (x, y) = (mvar("x"), mvar("y"));
        let c = [x.pow(3), &x.pow(2) * &y, &x * &y.pow(2), y.pow(3)];
        ParamCurve::new(c).expect("the twisted cubic is a valid parametrization")
    }

    pub fn components(&self) -> &[MPoly; 4] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `f` composed with the parametrization, a binary form in `x, y`.
    pub fn pull_back(&self, f: &MPoly) -> MPoly {
        let map: BTreeMap<&str, MPoly> = COORDS.iter().copied().zip(self.components.iter().cloned()).collect();
        f.subst(&map)
    }
}

/// Whether `f` vanishes identically on the curve.
pub fn contains_param_curve(f: &MPoly, curve: &ParamCurve) -> bool {
    curve.pull_back(f).is_zero()
}
