use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceForm};
use crate::linalg::{determinant, solve, Matrix};
use crate::ratmath::Rational;

pub type NamedCurves = [(String, DivisorClass<Rational>)];

#[derive(Clone, Debug, PartialEq)]
pub struct ZariskiResult {
    pub positive: DivisorClass<Rational>,
    /// `(curve index, coefficient)` for every support curve, coefficients positive.
    pub negative: Vec<(usize, Rational)>,
    pub support: Vec<usize>,
}

impl ZariskiResult {
    pub fn negative_class(&self, curves: &NamedCurves) -> DivisorClass<Rational> {
        self.negative
            .iter()
            .fold(DivisorClass::zero(self.positive.basis()), |acc, (i, c)| {
                &acc + &curves[*i].1.scale(c)
            })
    }
}

pub(crate) fn gram(curves: &NamedCurves, support: &[usize], form: &SurfaceForm) -> Result<Matrix<Rational>> {
    support
        .iter()
        .map(|&i| {
            support
                .iter()
                .map(|&j| form.pair(&curves[i].1, &curves[j].1))
                .collect()
        })
        .collect()
}

/// Sylvester's criterion applied to `-G`.
pub fn is_negative_definite(g: &Matrix<Rational>) -> bool {
    let neg: Matrix<Rational> = g.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    (1..=neg.len()).all(|k| {
        let minor: Matrix<Rational> = neg[..k].iter().map(|r| r[..k].to_vec()).collect();
        determinant(&minor).is_positive()
    })
}

pub(crate) fn support_names(curves: &NamedCurves, support: &[usize]) -> String {
    support
        .iter()
        .map(|&i| curves[i].0.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn check_support(curves: &NamedCurves, support: &[usize], form: &SurfaceForm) -> Result<Matrix<Rational>> {
    let g = gram(curves, support, form)?;
    if !is_negative_definite(&g) {
        return Err(Error::IndefiniteSupport(support_names(curves, support)));
    }
    Ok(g)
}

/// Zariski decomposition `D = P + N` against a finite list of extremal curves.
///
/// The support grows from the curves pairing negatively with the current
/// positive part until none is left; each round solves the Gram system from
/// scratch with the full support.
pub fn zariski_decompose(
    d: &DivisorClass<Rational>,
    curves: &NamedCurves,
    form: &SurfaceForm,
) -> Result<ZariskiResult> {
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    let mut support: Vec<usize> = vec![];
    let mut p = d.clone();
    let mut coeffs: Vec<Rational> = vec![];
    loop {
        let mut grew = false;
        for (i, (name, c)) in curves.iter().enumerate() {
            if support.contains(&i) || !form.pair(&p, c)?.is_negative() {
                continue;
            }
            if !form.square(c)?.is_negative() {
                return Err(Error::NotPseudoEffective(format!(
                    "{d} pairs negatively with `{name}`, which has nonnegative self-intersection"
                )));
            }
            support.push(i);
            grew = true;
        }
        if !grew {
            break;
        }
        support.sort_unstable();
        let g = check_support(curves, &support, form)?;
        let rhs = support
            .iter()
            .map(|&i| form.pair(d, &curves[i].1))
            .collect::<Result<Vec<_>>>()?;
        coeffs = solve(&g, &rhs)?;
        if let Some(k) = coeffs.iter().position(|c| c.is_negative()) {
            return Err(Error::NotPseudoEffective(format!(
                "{d}: negative part coefficient of `{}` would be {}",
                curves[support[k]].0, coeffs[k]
            )));
        }
        p = support
            .iter()
            .zip(&coeffs)
            .fold(d.clone(), |acc, (&i, a)| &acc - &curves[i].1.scale(a));
    }
    if form.square(&p)?.is_negative() {
        return Err(Error::NotPseudoEffective(format!("{d}: positive part has negative square")));
    }
    let negative: Vec<(usize, Rational)> = support
        .iter()
        .zip(coeffs)
        .filter(|(_, a)| !a.is_zero())
        .map(|(&i, a)| (i, a))
        .collect();
    let support = negative.iter().map(|(i, _)| *i).collect();
    Ok(ZariskiResult {
        positive: p,
        negative,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::presets;
    use crate::ratmath::{int, rat};

    fn dp5(l: Rational, e: [i64; 4]) -> DivisorClass<Rational> {
        let s = presets::plane_surface();
        let mut c = vec![l];
        c.extend(e.iter().map(|&x| int(x)));
        DivisorClass::new(s.basis(), c).unwrap()
    }

    /// `(8 - 5u - v)l + (u - 2)E1 + (2u - 3)(E2 + E3 + E4)`
    fn plane_late(u: Rational, v: Rational) -> DivisorClass<Rational> {
        let s = presets::plane_surface();
        let e = int(2) * &u - int(3);
        let c = vec![int(8) - int(5) * &u - v, &u - int(2), e.clone(), e.clone(), e];
        DivisorClass::new(s.basis(), c).unwrap()
    }

    #[test]
    fn support_on_the_three_lines_through_e1() {
        let s = presets::plane_surface();
        let (u, v) = (rat(5, 4), rat(9, 16));
        let d = plane_late(u.clone(), v.clone());
        let z = zariski_decompose(&d, &s.curves, &s.form).unwrap();
        let names: Vec<&str> = z.support.iter().map(|&i| s.curves[i].0.as_str()).collect();
        assert_eq!(names, ["L12", "L13", "L14"]);
        let expected = int(2) * u + v - int(3);
        assert!(z.negative.iter().all(|(_, a)| *a == expected));
        assert_eq!(&z.positive + &z.negative_class(&s.curves), d);
    }

    #[test]
    fn beyond_the_volume_wall_the_support_is_indefinite() {
        // (u, v) = (1, 3/2) lies past v = (5 - 3u)/2; all six lines pair negatively
        let s = presets::plane_surface();
        let d = plane_late(int(1), rat(3, 2));
        assert!(matches!(
            zariski_decompose(&d, &s.curves, &s.form),
            Err(Error::IndefiniteSupport(_))
        ));
    }

    #[test]
    fn nef_input_is_its_own_positive_part() {
        let s = presets::plane_surface();
        let d = dp5(int(3), [-1, -1, -1, -1]);
        let z = zariski_decompose(&d, &s.curves, &s.form).unwrap();
        assert_eq!(z.positive, d);
        assert!(z.negative.is_empty());
    }

    #[test]
    fn outside_the_cone_on_the_quadric() {
        let q = presets::exceptional_line_surface();
        let d = DivisorClass::new(q.basis(), vec![int(2), int(-1)]).unwrap();
        assert!(matches!(
            zariski_decompose(&d, &q.curves, &q.form),
            Err(Error::NotPseudoEffective(_))
        ));
    }

    #[test]
    fn sylvester() {
        assert!(is_negative_definite(&vec![vec![int(-1), int(0)], vec![int(0), int(-1)]]));
        assert!(!is_negative_definite(&vec![vec![int(-1), int(1)], vec![int(1), int(-1)]]));
    }
}
