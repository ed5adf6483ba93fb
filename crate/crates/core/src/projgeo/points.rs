//! The six points where the twisted cubic meets the quadric of invariant lines.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::action::COORDS;
use super::curve::ParamCurve;
use super::mpoly::MPoly;
use crate::error::Result;
use crate::linalg::{kernel, rank};
use crate::ratmath::Rational;
use crate::scalar::{Field, GaussianRational};

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(Rational::from_int(re), Rational::from_int(im))
}

/// `(name, [x:y], coordinates on the cubic)`.
pub fn six_points() -> Vec<(&'static str, [GaussianRational; 2], [GaussianRational; 4])> {
    vec![
        ("P1", [g(0, 0), g(1, 0)], [g(0, 0), g(0, 0), g(0, 0), g(1, 0)]),
        ("P2", [g(1, 0), g(0, 0)], [g(1, 0), g(0, 0), g(0, 0), g(0, 0)]),
        ("P3", [g(1, 0), g(1, 0)], [g(1, 0), g(1, 0), g(1, 0), g(1, 0)]),
        ("P4", [g(1, 0), g(-1, 0)], [g(1, 0), g(-1, 0), g(1, 0), g(-1, 0)]),
        ("P5", [g(1, 0), g(0, 1)], [g(1, 0), g(0, 1), g(-1, 0), g(0, -1)]),
        ("P6", [g(1, 0), g(0, -1)], [g(1, 0), g(0, -1), g(-1, 0), g(0, 1)]),
    ]
}

pub fn eval_point(f: &MPoly, p: &[GaussianRational; 4]) -> Result<GaussianRational> {
    let values: BTreeMap<&str, GaussianRational> = COORDS.iter().copied().zip(p.iter().cloned()).collect();
    f.eval(&values)
}

/// Image of `[x:y]` under the parametrization.
pub fn curve_point(curve: &ParamCurve, xy: &[GaussianRational; 2]) -> Result<[GaussianRational; 4]> {
    let values: BTreeMap<&str, GaussianRational> = [("x", xy[0].clone()), ("y", xy[1].clone())].into();
    let c = curve.components();
    Ok([c[0].eval(&values)?, c[1].eval(&values)?, c[2].eval(&values)?, c[3].eval(&values)?])
}

/// Equality in P^3: the two vectors are proportional and nonzero.
pub fn same_projective_point<F: Field>(a: &[F; 4], b: &[F; 4]) -> bool {
    let m = vec![a.to_vec(), b.to_vec()];
    let nonzero = |v: &[F; 4]| v.iter().any(|x| !x.is_zero());
    nonzero(a) && nonzero(b) && rank(&m) == 1
}

/// The invariant line `{l x0 + m x2 = 0, l x3 + m x1 = 0}` through two points, as `[l:m]`.
pub fn invariant_line_through(p: &[GaussianRational; 4], q: &[GaussianRational; 4]) -> Option<[GaussianRational; 2]> {
    let rows = vec![
        vec![p[0].clone(), p[2].clone()],
        vec![p[3].clone(), p[1].clone()],
        vec![q[0].clone(), q[2].clone()],
        vec![q[3].clone(), q[1].clone()],
    ];
    let ker = kernel(&rows, 2);
    (ker.len() == 1).then(|| [ker[0][0].clone(), ker[0][1].clone()])
}

/// The point pairs joined by invariant lines, each with its `[l:m]`.
pub fn invariant_secants() -> Vec<(&'static str, &'static str, [GaussianRational; 2])> {
    let pts = six_points();
    let mut out = vec![];
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if let Some(lm) = invariant_line_through(&pts[i].2, &pts[j].2) {
                out.push((pts[i].0, pts[j].0, lm));
            }
        }
    }
    out
}

pub fn i_unit() -> GaussianRational {
    GaussianRational::new(Rational::zero(), Rational::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::quadrics;

    #[test]
    fn points_lie_on_q4_and_the_cubic() {
        let cubic = ParamCurve::twisted_cubic();
        for (name, xy, coords) in six_points() {
            assert!(eval_point(&quadrics::q4(), &coords).unwrap().is_zero(), "{name}");
            assert!(same_projective_point(&curve_point(&cubic, &xy).unwrap(), &coords), "{name}");
        }
    }

    #[test]
    fn three_invariant_secants() {
        let pairs: Vec<(&str, &str)> = invariant_secants().iter().map(|(a, b, _)| (*a, *b)).collect();
        assert_eq!(pairs, [("P1", "P2"), ("P3", "P4"), ("P5", "P6")]);
    }

    #[test]
    fn i_squared() {
        assert_eq!(i_unit() * i_unit(), g(-1, 0));
    }
}
