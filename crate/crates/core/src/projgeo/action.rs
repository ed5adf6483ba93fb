use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::mpoly::{mvar, MPoly};
use crate::error::{Error, Result};
use crate::linalg::{determinant, identity, kernel, Matrix};
use crate::ratmath::{int, Poly1, Rational};

pub const COORDS: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// An element of PGL(4, Q), acting on points by `x -> Mx`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearAction {
    m: Matrix<Rational>,
}

impl LinearAction {
    pub fn new(m: Matrix<Rational>) -> Result<Self> {
        if m.len() != 4 || m.iter().any(|r| r.len() != 4) {
            return Err(Error::SingularMatrix);
        }
        if determinant(&m).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearAction { m })
    }

    pub fn identity() -> Self {
        LinearAction { m: identity(4) }
    }

    /// `[x0:x1:x2:x3] -> [x3:x2:x1:x0]`
    pub fn tau1() -> Self {
        let m = (0..4)
            .map(|i| (0..4).map(|j| if i + j == 3 { int(1) } else { int(0) }).collect())
            .collect();
        LinearAction { m }
    }

    /// `[x0:x1:x2:x3] -> [x0:-x1:x2:-x3]`
    pub fn tau2() -> Self {
        Self::diagonal([1, -1, 1, -1])
    }

    pub fn diagonal(d: [i64; 4]) -> Self {
        let m = (0..4)
            .map(|i| (0..4).map(|j| if i == j { int(d[i]) } else { int(0) }).collect())
            .collect();
        LinearAction { m }
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.m
    }
}

/// `f(Mx)`: the equation pulled back along the action.
pub fn transform_poly(g: &LinearAction, f: &MPoly) -> MPoly {
    let images: Vec<MPoly> = g
        .m
        .iter()
        .map(|row| {
            row.iter()
                .zip(COORDS)
                .fold(MPoly::zero(), |acc, (c, x)| &acc + &mvar(x).scale(c))
        })
        .collect();
    let map: BTreeMap<&str, MPoly> = COORDS.iter().copied().zip(images).collect();
    f.subst(&map)
}

/// The scalar `c` with `f(Mx) = c f(x)`, if `f` is a semi-invariant.
pub fn character(g: &LinearAction, f: &MPoly) -> Option<Rational> {
    transform_poly(g, f).proportional(f)
}

/// Common fixed locus of two commuting (up to scalar) actions.
#[derive(Clone, Debug, PartialEq)]
pub struct FixedLocus {
    /// Isolated fixed points, first nonzero coordinate normalized to 1.
    pub points: Vec<[Rational; 4]>,
    /// Bases of the positive-dimensional common eigenspaces (lines, planes).
    pub positive_dimensional: Vec<Vec<[Rational; 4]>>,
    pub whole_space: bool,
}

impl FixedLocus {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.positive_dimensional.is_empty() && !self.whole_space
    }
}

fn normalize(v: &[Rational]) -> [Rational; 4] {
    let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Rational::one);
    std::array::from_fn(|i| &v[i] / &lead)
}

/// Characteristic polynomial `det(lambda I - A)` by Faddeev–LeVerrier.
pub fn characteristic_polynomial(a: &Matrix<Rational>) -> Poly1<Rational> {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m: Matrix<Rational> = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = crate::linalg::mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        let am = crate::linalg::mat_mul(a, &next);
        let tr: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / int(k as i64);
        m = next;
    }
    Poly1::new('x', c)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![];
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Distinct rational roots, failing if the polynomial does not split over Q.
pub fn split_rationally(p: &Poly1<Rational>) -> Result<Vec<Rational>> {
    let mut rest = p.clone();
    let mut roots = vec![];
    while rest.degree().is_some_and(|d| d > 0) {
        // clear denominators
        let lcm = rest
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = rest
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let root = if ints[0].is_zero() {
            Some(Rational::zero())
        } else {
            let lead = ints.last().cloned().unwrap_or_else(BigInt::one);
            let mut found = None;
            'search: for pn in divisors(&ints[0]) {
                for qd in divisors(&lead) {
                    for sign in [1, -1] {
                        let r = Rational::new(&pn * sign, qd.clone());
                        if rest.eval(&r).is_zero() {
                            found = Some(r);
                            break 'search;
                        }
                    }
                }
            }
            found
        };
        let Some(r) = root else {
            return Err(Error::IrrationalEigenvalues(p.to_string()));
        };
        let lin = Poly1::new('x', vec![-r.clone(), Rational::one()]);
        rest = rest.div_rem(&lin).0;
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    roots.sort();
    Ok(roots)
}

fn shifted(m: &Matrix<Rational>, lambda: &Rational) -> Matrix<Rational> {
    m.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, x)| if i == j { x - lambda } else { x.clone() })
                .collect()
        })
        .collect()
}

/// Projective points fixed by both actions: common eigenvectors of the two matrices.
pub fn common_fixed_points(g1: &LinearAction, g2: &LinearAction) -> Result<FixedLocus> {
    let e1 = split_rationally(&characteristic_polynomial(&g1.m))?;
    let e2 = split_rationally(&characteristic_polynomial(&g2.m))?;
    let mut locus = FixedLocus {
        points: vec![],
        positive_dimensional: vec![],
        whole_space: false,
    };
    for l in &e1 {
        for m in &e2 {
            let mut stacked = shifted(&g1.m, l);
            stacked.extend(shifted(&g2.m, m));
            let ker = kernel(&stacked, 4);
            match ker.len() {
                0 => {}
                1 => locus.points.push(normalize(&ker[0])),
                4 => locus.whole_space = true,
                _ => locus
                    .positive_dimensional
                    .push(ker.iter().map(|v| normalize(v)).collect()),
            }
        }
    }
    Ok(locus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeo::quadrics;

    #[test]
    fn character_table() {
        let (t1, t2) = (LinearAction::tau1(), LinearAction::tau2());
        let table = |f: &MPoly| (character(&t1, f).unwrap(), character(&t2, f).unwrap());
        assert_eq!(table(&quadrics::q1()), (int(1), int(-1)));
        assert_eq!(table(&quadrics::q2()), (int(1), int(1)));
        assert_eq!(table(&quadrics::q3()), (int(-1), int(1)));
    }

    #[test]
    fn identity_acts_trivially() {
        let f = &quadrics::q2() * &mvar("x0");
        assert_eq!(transform_poly(&LinearAction::identity(), &f), f);
    }

    #[test]
    fn no_fixed_points_for_the_klein_group() {
        let locus = common_fixed_points(&LinearAction::tau1(), &LinearAction::tau2()).unwrap();
        assert!(locus.is_empty());
    }

    #[test]
    fn fixed_lines_of_a_single_involution() {
        let locus = common_fixed_points(&LinearAction::tau2(), &LinearAction::identity()).unwrap();
        assert!(locus.points.is_empty());
        assert!(!locus.whole_space);
        assert_eq!(locus.positive_dimensional.len(), 2);
        // {x1 = x3 = 0} and {x0 = x2 = 0}
        let supports: Vec<Vec<bool>> = locus
            .positive_dimensional
            .iter()
            .map(|b| (0..4).map(|i| b.iter().any(|v| !v[i].is_zero())).collect())
            .collect();
        assert!(supports.contains(&vec![true, false, true, false]));
        assert!(supports.contains(&vec![false, true, false, true]));
    }

    #[test]
    fn identity_fixes_everything() {
        let i = LinearAction::identity();
        assert!(common_fixed_points(&i, &i).unwrap().whole_space);
    }

    #[test]
    fn isolated_points_of_a_generic_diagonal() {
        let g = LinearAction::diagonal([1, 2, 3, 4]);
        let locus = common_fixed_points(&g, &LinearAction::identity()).unwrap();
        assert_eq!(locus.points.len(), 4);
    }

    #[test]
    fn irrational_eigenvalues_are_reported() {
        // rotation-like block with eigenvalues +-sqrt(2)
        let m = vec![
            vec![int(0), int(2), int(0), int(0)],
            vec![int(1), int(0), int(0), int(0)],
            vec![int(0), int(0), int(1), int(0)],
            vec![int(0), int(0), int(0), int(1)],
        ];
        let g = LinearAction::new(m).unwrap();
        assert!(matches!(
            common_fixed_points(&g, &LinearAction::identity()),
            Err(Error::IrrationalEigenvalues(_))
        ));
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(LinearAction::new(vec![vec![int(0); 4]; 4]), Err(Error::SingularMatrix));
    }

    #[test]
    fn char_poly_of_tau1() {
        // (x - 1)^2 (x + 1)^2 = x^4 - 2x^2 + 1
        let p = characteristic_polynomial(LinearAction::tau1().matrix());
        assert_eq!(p, Poly1::new('x', vec![int(1), int(0), int(-2), int(0), int(1)]));
        assert_eq!(split_rationally(&p).unwrap(), vec![int(-1), int(1)]);
    }
}
