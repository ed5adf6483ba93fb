use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::{Coefficient, DivisorClass, LatticeBasis};
use crate::error::{Error, Result};
use crate::ratmath::Rational;

fn sorted3(i: usize, j: usize, k: usize) -> (usize, usize, usize) {
    let mut a = [i, j, k];
    a.sort_unstable();
    (a[0], a[1], a[2])
}

/// Symmetric trilinear form given by its values on basis triples.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreefoldForm {
    basis: Arc<LatticeBasis>,
    values: BTreeMap<(usize, usize, usize), Rational>,
}

impl ThreefoldForm {
    /// Unlisted triples are zero. A triple listed twice (in any order) must
    /// carry the same value both times.
    pub fn new(basis: &Arc<LatticeBasis>, entries: &[(&str, &str, &str, Rational)]) -> Result<Self> {
        let idx = |n: &str| basis.index(n).ok_or_else(|| Error::UnknownGenerator(n.to_string()));
        let mut values = BTreeMap::new();
        for (a, b, c, v) in entries {
            let key = sorted3(idx(a)?, idx(b)?, idx(c)?);
            if let Some(old) = values.insert(key, v.clone()) {
                if old != *v {
                    return Err(Error::SymmetryViolated(format!("({a}, {b}, {c}): {old} vs {v}")));
                }
            }
        }
        values.retain(|_, v| !v.is_zero());
        Ok(ThreefoldForm {
            basis: basis.clone(),
            values,
        })
    }

    pub fn basis(&self) -> &Arc<LatticeBasis> {
        &self.basis
    }

    pub fn value(&self, i: usize, j: usize, k: usize) -> Rational {
        self.values
            .get(&sorted3(i, j, k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries as `(i <= j <= k, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.values.iter()
    }

    pub fn triple_product<R: Coefficient>(
        &self,
        d1: &DivisorClass<R>,
        d2: &DivisorClass<R>,
        d3: &DivisorClass<R>,
    ) -> Result<R> {
        for d in [d1, d2, d3] {
            self.basis.check(d.basis())?;
        }
        let n = self.basis.rank();
        let mut acc = R::zero();
        for i in 0..n {
            let a = &d1.coeffs()[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                let b = &d2.coeffs()[j];
                if b.is_zero() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for k in 0..n {
                    let t = self.value(i, j, k);
                    let c = &d3.coeffs()[k];
                    if t.is_zero() || c.is_zero() {
                        continue;
                    }
                    acc = acc + ab.clone() * c.clone() * R::from_rational(t);
                }
            }
        }
        Ok(acc)
    }

    pub fn cube<R: Coefficient>(&self, d: &DivisorClass<R>) -> Result<R> {
        self.triple_product(d, d, d)
    }
}

/// Symmetric bilinear form on a surface lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceForm {
    basis: Arc<LatticeBasis>,
    gram: Vec<Vec<Rational>>,
}

impl SurfaceForm {
    pub fn new(basis: &Arc<LatticeBasis>, entries: &[(&str, &str, Rational)]) -> Result<Self> {
        let n = basis.rank();
        let idx = |s: &str| basis.index(s).ok_or_else(|| Error::UnknownGenerator(s.to_string()));
        let mut gram = vec![vec![Rational::zero(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (a, b, v) in entries {
            let (i, j) = (idx(a)?, idx(b)?);
            if seen[i][j] && gram[i][j] != *v {
                return Err(Error::SymmetryViolated(format!("({a}, {b}): {} vs {v}", gram[i][j])));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            gram[i][j] = v.clone();
            gram[j][i] = v.clone();
        }
        Ok(SurfaceForm {
            basis: basis.clone(),
            gram,
        })
    }

    pub fn basis(&self) -> &Arc<LatticeBasis> {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn pair<R: Coefficient>(&self, a: &DivisorClass<R>, b: &DivisorClass<R>) -> Result<R> {
        self.basis.check(a.basis())?;
        self.basis.check(b.basis())?;
        let mut acc = R::zero();
        for (i, ai) in a.coeffs().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs().iter().enumerate() {
                let g = &self.gram[i][j];
                if g.is_zero() || bj.is_zero() {
                    continue;
                }
                acc = acc + ai.clone() * bj.clone() * R::from_rational(g.clone());
            }
        }
        Ok(acc)
    }

    /// Pairing of a (possibly parametric) class with a rational curve class.
    pub fn pair_curve<R: Coefficient>(&self, a: &DivisorClass<R>, c: &DivisorClass<Rational>) -> Result<R> {
        self.pair(a, &c.map(|x| R::from_rational(x.clone())))
    }

    pub fn square<R: Coefficient>(&self, a: &DivisorClass<R>) -> Result<R> {
        self.pair(a, a)
    }
}

/// Linear map from the threefold lattice to a surface lattice, given on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictionMap {
    source: Arc<LatticeBasis>,
    target: Arc<LatticeBasis>,
    images: Vec<DivisorClass<Rational>>,
}

impl RestrictionMap {
    pub fn new(
        source: &Arc<LatticeBasis>,
        target: &Arc<LatticeBasis>,
        table: &[(&str, DivisorClass<Rational>)],
    ) -> Result<Self> {
        let mut images: Vec<Option<DivisorClass<Rational>>> = vec![None; source.rank()];
        for (name, img) in table {
            let i = source
                .index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            target.check(img.basis())?;
            images[i] = Some(img.clone());
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                img.ok_or_else(|| Error::BasisMismatch {
                    expected: source.to_string(),
                    found: format!("no image for `{}`", source.names()[i]),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RestrictionMap {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn source(&self) -> &Arc<LatticeBasis> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LatticeBasis> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &DivisorClass<Rational> {
        &self.images[i]
    }

    pub fn restrict<R: Coefficient>(&self, d: &DivisorClass<R>) -> Result<DivisorClass<R>> {
        self.source.check(d.basis())?;
        let mut out = DivisorClass::<R>::zero(&self.target);
        for (c, img) in d.coeffs().iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            let term = img.map(|x| R::from_rational(x.clone()) * c.clone());
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Intersection numbers of one curve with the threefold generators.
///
/// An entry may be unknown; pairing then fails only if the class actually has
/// a nonzero coefficient on that generator.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePairing {
    name: String,
    basis: Arc<LatticeBasis>,
    values: Vec<Option<Rational>>,
}

impl CurvePairing {
    pub fn new(name: &str, basis: &Arc<LatticeBasis>, table: &[(&str, Option<Rational>)]) -> Result<Self> {
        let mut values = vec![None; basis.rank()];
        let mut given = vec![false; basis.rank()];
        for (g, v) in table {
            let i = basis.index(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
            values[i] = v.clone();
            given[i] = true;
        }
        if let Some(i) = given.iter().position(|g| !g) {
            return Err(Error::BasisMismatch {
                expected: basis.to_string(),
                found: format!("curve `{name}` has no entry for `{}`", basis.names()[i]),
            });
        }
        Ok(CurvePairing {
            name: name.to_string(),
            basis: basis.clone(),
            values,
        })
    }

    /// Convenience constructor for a fully determined table in basis order.
    pub fn from_values(name: &str, basis: &Arc<LatticeBasis>, values: Vec<Rational>) -> Result<Self> {
        let table: Vec<(&str, Option<Rational>)> = basis
            .names()
            .iter()
            .map(|n| n.as_str())
            .zip(values.into_iter().map(Some))
            .collect();
        Self::new(name, basis, &table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[Option<Rational>] {
        &self.values
    }

    pub fn pair<R: Coefficient>(&self, d: &DivisorClass<R>) -> Result<R> {
        self.basis.check(d.basis())?;
        let mut acc = R::zero();
        for (i, (c, v)) in d.coeffs().iter().zip(&self.values).enumerate() {
            if c.is_zero() {
                continue;
            }
            match v {
                Some(v) => acc = acc + c.clone() * R::from_rational(v.clone()),
                None => {
                    return Err(Error::UndeterminedPairing {
                        class: d.to_string(),
                        curve: self.name.clone(),
                        generator: self.basis.names()[i].clone(),
                    })
                }
            }
        }
        Ok(acc)
    }
}

/// Everything known about the threefold: tensor, anticanonical class, curves, cone.
#[derive(Clone, Debug)]
pub struct ThreefoldModel {
    pub form: ThreefoldForm,
    pub anticanonical: DivisorClass<Rational>,
    pub mori: Vec<CurvePairing>,
    pub effective: Vec<(String, DivisorClass<Rational>)>,
}

impl ThreefoldModel {
    pub fn basis(&self) -> &Arc<LatticeBasis> {
        self.form.basis()
    }

    pub fn degree(&self) -> Rational {
        self.form
            .cube(&self.anticanonical)
            .expect("anticanonical class lives on the model basis")
    }
}

/// A surface `Y` in the threefold with its own lattice and extremal curves.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub name: String,
    pub class: DivisorClass<Rational>,
    pub form: SurfaceForm,
    pub restriction: RestrictionMap,
    pub curves: Vec<(String, DivisorClass<Rational>)>,
}

impl SurfaceModel {
    pub fn basis(&self) -> &Arc<LatticeBasis> {
        self.form.basis()
    }

    pub fn curve(&self, name: &str) -> Option<&DivisorClass<Rational>> {
        self.curves.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }
}
