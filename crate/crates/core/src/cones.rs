//! Nef tests against finite curve lists, and exact membership in finitely generated cones.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{CurvePairing, DivisorClass, LatticeBasis, SurfaceForm};
use crate::linalg::{kernel, rank, solve_any, transpose, Matrix};
use crate::ratmath::Rational;

/// Outcome of a nef test. `violating` names the most negative curve, if any.
#[derive(Clone, Debug, PartialEq)]
pub struct NefCertificate {
    pub pairings: Vec<(String, Rational)>,
    pub violating: Option<(String, Rational)>,
}

impl NefCertificate {
    pub fn is_nef(&self) -> bool {
        self.violating.is_none()
    }

    fn from_pairings(pairings: Vec<(String, Rational)>) -> Self {
        let violating = pairings
            .iter()
            .filter(|(_, v)| v.is_negative())
            .min_by(|a, b| a.1.cmp(&b.1))
            .cloned();
        NefCertificate { pairings, violating }
    }
}

/// Nefness on the threefold, tested against curve pairing tables.
pub fn is_nef(d: &DivisorClass<Rational>, curves: &[CurvePairing]) -> Result<NefCertificate> {
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    let pairings = curves
        .iter()
        .map(|c| Ok((c.name().to_string(), c.pair(d)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(NefCertificate::from_pairings(pairings))
}

/// Nefness on a surface, tested against named curve classes.
pub fn is_nef_surface(
    d: &DivisorClass<Rational>,
    curves: &[(String, DivisorClass<Rational>)],
    form: &SurfaceForm,
) -> Result<NefCertificate> {
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    let pairings = curves
        .iter()
        .map(|(n, c)| Ok((n.clone(), form.pair(d, c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(NefCertificate::from_pairings(pairings))
}

/// A cone spanned by finitely many named classes over one basis.
#[derive(Clone, Debug)]
pub struct ConeSpec {
    basis: Arc<LatticeBasis>,
    names: Vec<String>,
    gens: Vec<DivisorClass<Rational>>,
}

impl ConeSpec {
    pub fn new(generators: Vec<(String, DivisorClass<Rational>)>) -> Result<Self> {
        let Some((_, first)) = generators.first() else {
            return Err(Error::EmptyCone);
        };
        let basis = first.basis().clone();
        for (i, (n, g)) in generators.iter().enumerate() {
            basis.check(g.basis())?;
            if generators[..i].iter().any(|(m, _)| m == n) {
                return Err(Error::DuplicateGenerator(n.clone()));
            }
        }
        let (names, gens) = generators.into_iter().unzip();
        Ok(ConeSpec { basis, names, gens })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[DivisorClass<Rational>] {
        &self.gens
    }

    pub fn basis(&self) -> &Arc<LatticeBasis> {
        &self.basis
    }

    /// Columns are generators.
    fn matrix(&self, subset: &[usize]) -> Matrix<Rational> {
        let rows: Matrix<Rational> = subset.iter().map(|&i| self.gens[i].coeffs().to_vec()).collect();
        transpose(&rows)
    }

    fn rank(&self) -> usize {
        let rows: Matrix<Rational> = self.gens.iter().map(|g| g.coeffs().to_vec()).collect();
        rank(&rows)
    }

    fn independent_subsets(&self, size: usize) -> Vec<Vec<usize>> {
        combinations(self.gens.len(), size)
            .into_iter()
            .filter(|s| {
                let rows: Matrix<Rational> = s.iter().map(|&i| self.gens[i].coeffs().to_vec()).collect();
                rank(&rows) == size
            })
            .collect()
    }

    /// Coefficients of `d` on the generators in `subset`, if `d` lies in their span.
    fn solve_on(&self, subset: &[usize], d: &DivisorClass<Rational>) -> Option<Vec<Rational>> {
        if subset.is_empty() {
            return d.is_zero().then(Vec::new);
        }
        solve_any(&self.matrix(subset), d.coeffs())
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(0, n, k, &mut vec![], &mut out);
    out
}

/// Nonnegative coefficients, one per generator, reproducing the input class.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub names: Vec<String>,
    pub coeffs: Vec<Rational>,
}

impl Decomposition {
    pub fn recombine(&self, cone: &ConeSpec) -> DivisorClass<Rational> {
        cone.gens
            .iter()
            .zip(&self.coeffs)
            .fold(DivisorClass::zero(&cone.basis), |acc, (g, c)| &acc + &g.scale(c))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.names.iter().zip(&self.coeffs) {
            writeln!(f, "{n}: {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EffResult {
    Feasible(Decomposition),
    /// `witness` is a linear functional `y` on the basis coefficients with
    /// `y . g >= 0` for every generator and `y . D < 0`.
    Infeasible { witness: Vec<Rational> },
}

impl EffResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, EffResult::Feasible(_))
    }

    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            EffResult::Feasible(d) => Some(d),
            EffResult::Infeasible { .. } => None,
        }
    }
}

fn dot(y: &[Rational], x: &[Rational]) -> Rational {
    y.iter().zip(x).map(|(a, b)| a * b).sum()
}

/// Finds a nonnegative combination of the cone generators equal to `d`.
///
/// Supports of size `rank` are tried in lexicographic order and the first
/// nonnegative basic solution is returned, so the answer is deterministic even
/// when the decomposition is not unique.
pub fn effective_decompose(d: &DivisorClass<Rational>, cone: &ConeSpec) -> Result<EffResult> {
    cone.basis.check(d.basis())?;
    let n = cone.gens.len();
    if d.is_zero() {
        return Ok(EffResult::Feasible(Decomposition {
            names: cone.names.clone(),
            coeffs: vec![Rational::zero(); n],
        }));
    }
    let r = cone.rank();
    let subsets = cone.independent_subsets(r);
    let mut in_span = false;
    for s in &subsets {
        let Some(x) = cone.solve_on(s, d) else { continue };
        in_span = true;
        if x.iter().all(|c| !c.is_negative()) {
            let mut coeffs = vec![Rational::zero(); n];
            for (&i, c) in s.iter().zip(x) {
                coeffs[i] = c;
            }
            return Ok(EffResult::Feasible(Decomposition {
                names: cone.names.clone(),
                coeffs,
            }));
        }
    }
    Ok(EffResult::Infeasible {
        witness: farkas_witness(d, cone, r, in_span),
    })
}

fn farkas_witness(d: &DivisorClass<Rational>, cone: &ConeSpec, r: usize, in_span: bool) -> Vec<Rational> {
    let m = cone.basis.rank();
    let gens: Matrix<Rational> = cone.gens.iter().map(|g| g.coeffs().to_vec()).collect();
    if !in_span {
        // a functional vanishing on the span but not on d
        for y in kernel(&gens, m) {
            let yd = dot(&y, d.coeffs());
            if !yd.is_zero() {
                return if yd.is_negative() { y } else { y.iter().map(|c| -c).collect() };
            }
        }
    }
    // a facet normal of the cone inside its span separates d
    for s in cone.independent_subsets(r.saturating_sub(1)) {
        let rows: Matrix<Rational> = s.iter().map(|&i| gens[i].clone()).collect();
        for y in kernel(&rows, m) {
            let vals: Vec<Rational> = gens.iter().map(|g| dot(&y, g)).collect();
            if vals.iter().all(|v| v.is_zero()) {
                continue;
            }
            let sign = if vals.iter().all(|v| !v.is_negative()) {
                Rational::from_integer(1.into())
            } else if vals.iter().all(|v| !v.is_positive()) {
                Rational::from_integer((-1).into())
            } else {
                continue;
            };
            let y: Vec<Rational> = y.iter().map(|c| c * &sign).collect();
            if dot(&y, d.coeffs()).is_negative() {
                return y;
            }
        }
    }
    vec![]
}

/// Largest `u` with `a - u b` in the cone.
pub fn pseudoeffective_threshold(
    a: &DivisorClass<Rational>,
    b: &DivisorClass<Rational>,
    cone: &ConeSpec,
) -> Result<Rational> {
    cone.basis.check(a.basis())?;
    cone.basis.check(b.basis())?;
    if !effective_decompose(a, cone)?.is_feasible() {
        return Err(Error::NotInConeAtZero);
    }
    let mut best: Option<Rational> = None;
    for s in cone.independent_subsets(cone.rank()) {
        let (Some(xa), Some(xb)) = (cone.solve_on(&s, a), cone.solve_on(&s, b)) else {
            continue;
        };
        // feasible u on this support: xa_i - u xb_i >= 0, u >= 0
        let mut lo = Rational::zero();
        let mut hi: Option<Rational> = None;
        let mut empty = false;
        for (ca, cb) in xa.iter().zip(&xb) {
            if cb.is_zero() {
                empty |= ca.is_negative();
                continue;
            }
            let t = ca / cb;
            if cb.is_positive() {
                hi = Some(match hi {
                    Some(h) if h < t => h,
                    _ => t,
                });
            } else if t > lo {
                lo = t;
            }
        }
        if empty {
            continue;
        }
        match hi {
            None => return Err(Error::UnboundedThreshold(b.to_string())),
            Some(h) if h >= lo
                && best.as_ref().is_none_or(|x| *x < h) => {
                    best = Some(h);
                }
            _ => {}
        }
    }
    Ok(best.unwrap_or_else(Rational::zero))
}
