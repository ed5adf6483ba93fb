use std::collections::BTreeMap;

use super::action::COORDS;
use super::mpoly::{mvar, MPoly};
use crate::error::{Error, Result};
use crate::ratmath::Rational;

/// Free coordinates on a parametrized line.
pub const LINE_COORDS: [&str; 2] = ["p", "q"];

/// A line `{f = 0, g = 0}` whose linear forms have coefficients polynomial in parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamLine {
    forms: [[MPoly; 4]; 2],
}

impl ParamLine {
    pub fn new(forms: [[MPoly; 4]; 2]) -> Result<Self> {
        if forms.iter().flatten().any(|c| c.variables().iter().any(|v| COORDS.contains(&v.as_str()))) {
            return Err(Error::NotHomogeneous("line coefficients must not involve x0..x3".into()));
        }
        let line = ParamLine { forms };
        line.pivot()?;
        Ok(line)
    }

    /// The invariant line `{x0 - s x2 = 0, x3 - s x1 = 0}` for the parameter named `param`.
    pub fn invariant(param: &str) -> Self {
        let s = mvar(param);
        let one = MPoly::constant(Rational::from_integer(1.into()));
        let z = MPoly::zero();
        ParamLine::new([
            [one.clone(), z.clone(), -&s, z.clone()],
            [z.clone(), -&s, z, one],
        ])
        .expect("invariant lines are nondegenerate")
    }

    /// Reads the linear forms off two polynomials in `x0..x3`.
    pub fn from_forms(f: &MPoly, g: &MPoly) -> Result<Self> {
        let row = |h: &MPoly| -> Result<[MPoly; 4]> {
            if h.homogeneous_degree(&COORDS)?.is_some_and(|d| d != 1) {
                return Err(Error::NotHomogeneous(format!("`{h}` is not linear")));
            }
            let mut out: [MPoly; 4] = std::array::from_fn(|_| MPoly::zero());
            for (m, c) in h.coefficients_in(&COORDS) {
                let i = COORDS.iter().position(|x| m.exponent(x) == 1).unwrap_or(0);
                out[i] = c;
            }
            Ok(out)
        };
        ParamLine::new([row(f)?, row(g)?])
    }

    pub fn forms(&self) -> &[[MPoly; 4]; 2] {
        &self.forms
    }

    fn minor(&self, i: usize, j: usize) -> MPoly {
        let [a, b] = &self.forms;
        &(&a[i] * &b[j]) - &(&a[j] * &b[i])
    }

    /// Dependent coordinate pair: the first with a constant nonzero minor, else the first nonzero one.
    fn pivot(&self) -> Result<(usize, usize, MPoly)> {
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
        let mut fallback = None;
        for &(i, j) in &pairs {
            let d = self.minor(i, j);
            if d.is_zero() {
                continue;
            }
            if d.variables().is_empty() {
                return Ok((i, j, d));
            }
            fallback.get_or_insert((i, j, d));
        }
        fallback.ok_or(Error::DegenerateLine)
    }

    /// Points of the line as polynomials in the free coordinates `p, q`.
    ///
    /// With a non-constant pivot minor the coordinates are scaled by it, which
    /// is harmless projectively away from its zeros.
    pub fn parametrize(&self) -> Result<[MPoly; 4]> {
        let (i, j, det) = self.pivot()?;
        let free: Vec<usize> = (0..4).filter(|k| *k != i && *k != j).collect();
        let [a, b] = &self.forms;
        let (p, q) = (mvar(LINE_COORDS[0]), mvar(LINE_COORDS[1]));
        // a_i x_i + a_j x_j = r1, b_i x_i + b_j x_j = r2
        let r1 = -&(&(&a[free[0]] * &p) + &(&a[free[1]] * &q));
        let r2 = -&(&(&b[free[0]] * &p) + &(&b[free[1]] * &q));
        let xi = &(&r1 * &b[j]) - &(&a[j] * &r2);
        let xj = &(&a[i] * &r2) - &(&b[i] * &r1);
        let constant = det.variables().is_empty();
        let inv = |h: MPoly| -> MPoly {
            if constant {
                h.scale(&(Rational::from_integer(1.into()) / det.coeff(&Default::default())))
            } else {
                h
            }
        };
        let scale_free = |h: MPoly| if constant { h } else { &h * &det };
        let mut out: [MPoly; 4] = std::array::from_fn(|_| MPoly::zero());
        out[i] = inv(xi);
        out[j] = inv(xj);
        out[free[0]] = scale_free(p);
        out[free[1]] = scale_free(q);
        Ok(out)
    }

    /// Substitutes a value for one parameter, failing if the forms become dependent.
    pub fn specialize(&self, param: &str, value: &MPoly) -> Result<Self> {
        let mut map = BTreeMap::new();
        map.insert(param, value.clone());
        let forms = self.forms.clone().map(|row| row.map(|c| c.subst(&map)));
        ParamLine::new(forms)
    }
}

/// Conditions on the parameters for `L` to lie in `{F = 0}`: the nonzero
/// coefficients of `F` restricted to `L` as a binary form in `p, q`.
pub fn line_containment_conditions(f: &MPoly, line: &ParamLine) -> Result<Vec<MPoly>> {
    f.homogeneous_degree(&COORDS)?;
    let coords = line.parametrize()?;
    let map: BTreeMap<&str, MPoly> = COORDS.iter().copied().zip(coords).collect();
    let restricted = f.subst(&map);
    Ok(restricted
        .coefficients_in(&LINE_COORDS)
        .into_values()
        .filter(|c| !c.is_zero())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::mpoly::mint;
    use crate::projgeo::quadrics;

    #[test]
    fn invariant_line_parametrization() {
        let c = ParamLine::invariant("s").parametrize().unwrap();
        let (s, p, q) = (mvar("s"), mvar("p"), mvar("q"));
        assert_eq!(c, [&s * &q, p.clone(), q.clone(), &s * &p]);
    }

    #[test]
    fn invariant_lines_lie_on_q4() {
        assert!(line_containment_conditions(&quadrics::q4(), &ParamLine::invariant("t"))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn coordinate_line_in_a_hyperplane() {
        let l = ParamLine::from_forms(&mvar("x2"), &mvar("x3")).unwrap();
        assert!(line_containment_conditions(&mvar("x3"), &l).unwrap().is_empty());
        assert_eq!(line_containment_conditions(&mvar("x0"), &l).unwrap().len(), 1);
    }

    #[test]
    fn degenerate_lines() {
        assert_eq!(ParamLine::from_forms(&mvar("x0"), &mvar("x0").scale(&Rational::from_integer(2.into()))), Err(Error::DegenerateLine));
        // {x0 - s x2, x0 - x2} collapses at s = 1
        let l = ParamLine::from_forms(&(&mvar("x0") - &(&mvar("s") * &mvar("x2"))), &(&mvar("x0") - &mvar("x2"))).unwrap();
        assert_eq!(l.specialize("s", &mint(1)), Err(Error::DegenerateLine));
        assert!(l.specialize("s", &mint(2)).is_ok());
    }

    #[test]
    fn non_constant_pivot() {
        // {s x0 + x1, x2}: pivot minor is s
        let l = ParamLine::from_forms(&(&(&mvar("s") * &mvar("x0")) + &mvar("x1")), &mvar("x2")).unwrap();
        let c = l.parametrize().unwrap();
        let f = &(&mvar("s") * &mvar("x0")) + &mvar("x1");
        let map: BTreeMap<&str, MPoly> = COORDS.iter().copied().zip(c).collect();
        assert!(f.subst(&map).is_zero());
    }
}
