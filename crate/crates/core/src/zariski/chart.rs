use std::fmt;

use num_traits::{Signed, Zero};

use super::decompose::NamedCurves;
use super::sweep::{v_sweep, SweepChamber};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceForm};
use crate::ratmath::{int, integrate_region, interpolate, rat, rational_roots, Poly1, Poly2, Rational};

/// A u-interval on which the class being swept has one polynomial formula.
#[derive(Clone, Debug)]
pub struct ChartPiece {
    pub u_lo: Rational,
    pub u_hi: Rational,
    /// Coefficients are polynomials in `u`.
    pub class: DivisorClass<Poly1<Rational>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChartChamber {
    pub u_lo: Rational,
    pub u_hi: Rational,
    pub v_lo: Poly1<Rational>,
    pub v_hi: Poly1<Rational>,
    pub support: Vec<String>,
    pub positive: DivisorClass<Poly2<Rational>>,
    pub negative: Vec<(String, Poly2<Rational>)>,
    pub vol: Poly2<Rational>,
}

impl ChartChamber {
    pub fn integral(&self) -> Result<Rational> {
        integrate_region(&self.vol, &self.u_lo, &self.u_hi, &self.v_lo, &self.v_hi)
    }

    pub fn contains(&self, u: &Rational, v: &Rational) -> bool {
        *u >= self.u_lo && *u <= self.u_hi && *v >= self.v_lo.eval(u) && *v <= self.v_hi.eval(u)
    }
}

impl fmt::Display for ChartChamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support = if self.support.is_empty() {
            "none".to_string()
        } else {
            self.support.join(", ")
        };
        write!(
            f,
            "u in [{}, {}], v in [{}, {}]; support {{{}}}; vol = {}",
            self.u_lo, self.u_hi, self.v_lo, self.v_hi, support, self.vol
        )
    }
}

/// Chamber decomposition of `{u_lo <= u <= u_hi, v >= 0, D0(u) - vZ pseudo-effective}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZariskiChart {
    pub chambers: Vec<ChartChamber>,
}

impl ZariskiChart {
    /// Sum of the double integrals of `vol` over all chambers.
    pub fn integrate_vol(&self) -> Result<Rational> {
        self.chambers.iter().map(|c| c.integral()).sum()
    }

    /// Distinct v-bound polynomials appearing anywhere in the chart.
    pub fn v_bounds(&self) -> Vec<Poly1<Rational>> {
        let mut out: Vec<Poly1<Rational>> = vec![];
        for c in &self.chambers {
            for b in [&c.v_lo, &c.v_hi] {
                if !out.contains(b) {
                    out.push(b.clone());
                }
            }
        }
        out
    }

    /// Interior u-breaks, i.e. chamber endpoints strictly inside the u-range.
    pub fn u_breaks(&self) -> Vec<Rational> {
        let lo = self.chambers.iter().map(|c| c.u_lo.clone()).min();
        let hi = self.chambers.iter().map(|c| c.u_hi.clone()).max();
        let mut out: Vec<Rational> = self
            .chambers
            .iter()
            .flat_map(|c| [c.u_lo.clone(), c.u_hi.clone()])
            .filter(|x| Some(x) != lo.as_ref() && Some(x) != hi.as_ref())
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for ZariskiChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.chambers {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

const MAX_DEPTH: usize = 8;

struct FitChamber {
    support: Vec<usize>,
    v_lo: Poly1<Rational>,
    v_hi: Poly1<Rational>,
    positive: DivisorClass<Poly2<Rational>>,
    negative: Vec<(usize, Poly2<Rational>)>,
}

struct Ctx<'a> {
    z: &'a DivisorClass<Rational>,
    curves: &'a NamedCurves,
    form: &'a SurfaceForm,
}

fn sample(a: &Rational, b: &Rational, k: i64, n: i64) -> Rational {
    a + (b - a) * rat(k, n)
}

/// Fits `sum_j c_j(u) v^j` through values of `c(v)` at the sample `u`s.
fn fit_poly(us: &[Rational], vals: &[&Poly1<Rational>]) -> Poly2<Rational> {
    let deg = vals.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let cs: Vec<Poly1<Rational>> = (0..=deg)
        .map(|j| {
            let pts: Vec<_> = us.iter().cloned().zip(vals.iter().map(|p| p.coeff(j))).collect();
            interpolate('u', &pts)
        })
        .collect();
    Poly2::from_v_coeffs(&cs)
}

fn fit(us: &[Rational], sweeps: &[Vec<SweepChamber>]) -> Option<Vec<FitChamber>> {
    let first = &sweeps[0];
    if sweeps
        .iter()
        .any(|s| s.len() != first.len() || s.iter().zip(first).any(|(a, b)| a.support != b.support))
    {
        return None;
    }
    let mut out = vec![];
    for i in 0..first.len() {
        let ch: Vec<&SweepChamber> = sweeps.iter().map(|s| &s[i]).collect();
        let pts = |f: &dyn Fn(&SweepChamber) -> Rational| -> Poly1<Rational> {
            interpolate('u', &us.iter().cloned().zip(ch.iter().map(|c| f(c))).collect::<Vec<_>>())
        };
        let basis = first[i].positive.basis();
        let rank = basis.rank();
        let coeffs = (0..rank)
            .map(|k| {
                let vals: Vec<&Poly1<Rational>> = ch.iter().map(|c| &c.positive.coeffs()[k]).collect();
                fit_poly(us, &vals)
            })
            .collect();
        let negative = (0..first[i].negative.len())
            .map(|j| {
                let vals: Vec<&Poly1<Rational>> = ch.iter().map(|c| &c.negative[j].1).collect();
                (first[i].negative[j].0, fit_poly(us, &vals))
            })
            .collect();
        out.push(FitChamber {
            support: first[i].support.clone(),
            v_lo: pts(&|c| c.v_lo.clone()),
            v_hi: pts(&|c| c.v_hi.clone()),
            positive: DivisorClass::new(basis, coeffs).ok()?,
            negative,
        });
    }
    Some(out)
}

fn matches_sample(fitted: &[FitChamber], u: &Rational, sweep: &[SweepChamber]) -> bool {
    fitted.len() == sweep.len()
        && fitted.iter().zip(sweep).all(|(f, s)| {
            f.support == s.support
                && f.v_lo.eval(u) == s.v_lo
                && f.v_hi.eval(u) == s.v_hi
                && f.positive.eval_u(u) == s.positive
                && f.negative.len() == s.negative.len()
                && f.negative
                    .iter()
                    .zip(&s.negative)
                    .all(|(a, b)| a.0 == b.0 && a.1.eval_u(u) == b.1)
        })
}

/// Exact sign test for a polynomial of degree at most 2 on `[a, b]`.
fn nonneg_on_interval(p: &Poly1<Rational>, a: &Rational, b: &Rational) -> Result<bool> {
    match p.degree() {
        None => Ok(true),
        Some(d) if d <= 2 => {
            let mut pts = vec![a.clone(), b.clone()];
            if d == 2 {
                let two_a = p.coeff(2) * int(2);
                let vertex = -p.coeff(1) / two_a;
                if vertex > *a && vertex < *b {
                    pts.push(vertex);
                }
            }
            Ok(pts.iter().all(|x| !p.eval(x).is_negative()))
        }
        Some(_) => Err(Error::NonAffineWall(p.to_string())),
    }
}

/// Affine `g` is nonnegative on the quadrilateral `a <= u <= b, lo(u) <= v <= hi(u)`.
fn nonneg_on_region(
    g: &Poly2<Rational>,
    a: &Rational,
    b: &Rational,
    lo: &Poly1<Rational>,
    hi: &Poly1<Rational>,
) -> Result<bool> {
    for p in [lo, hi] {
        if p.degree().unwrap_or(0) > 1 {
            return Err(Error::NonAffineWall(p.to_string()));
        }
    }
    if g.degree().unwrap_or(0) > 1 {
        return Err(Error::NonAffineWall(g.to_string()));
    }
    Ok([a, b]
        .iter()
        .flat_map(|u| [(*u, lo.eval(u)), (*u, hi.eval(u))])
        .all(|(u, v)| !g.eval(u, &v).is_negative()))
}

/// Checks the fitted chambers exactly, as polynomial identities and sign
/// conditions over the whole cell.
fn verify(fitted: &[FitChamber], piece: &DivisorClass<Poly2<Rational>>, a: &Rational, b: &Rational, cx: &Ctx) -> Result<bool> {
    let zq: DivisorClass<Poly2<Rational>> = cx.z.promote();
    let target = piece - &zq.scale(&Poly2::v());
    let mut expected_lo = Poly1::zero_in('u');
    for (idx, ch) in fitted.iter().enumerate() {
        if ch.v_lo != expected_lo || !nonneg_on_interval(&(&ch.v_hi - &ch.v_lo), a, b)? {
            return Ok(false);
        }
        let mut recombined = ch.positive.clone();
        for (i, n) in &ch.negative {
            recombined = &recombined + &cx.curves[*i].1.promote::<Poly2<Rational>>().scale(n);
            if !nonneg_on_region(n, a, b, &ch.v_lo, &ch.v_hi)? {
                return Ok(false);
            }
        }
        if recombined != target {
            return Ok(false);
        }
        for (i, (_, c)) in cx.curves.iter().enumerate() {
            let pc = cx.form.pair_curve(&ch.positive, c)?;
            let ok = if ch.support.contains(&i) {
                pc.is_zero()
            } else {
                nonneg_on_region(&pc, a, b, &ch.v_lo, &ch.v_hi)?
            };
            if !ok {
                return Ok(false);
            }
        }
        if idx + 1 == fitted.len() {
            let vol = cx.form.square(&ch.positive)?;
            if !vol.subst_v(&ch.v_hi).is_zero() {
                return Ok(false);
            }
            // vol stays positive below the terminal wall: the other root is outside (lo, hi)
            let qa = vol.v_coeff(2);
            if !qa.is_zero() {
                let qb = vol.v_coeff(1);
                let above = &(&(-&qb) - &(&qa * &ch.v_hi).scale(&int(2))) * &qa;
                let below = &(&(&qb + &(&qa * &ch.v_hi)) + &(&qa * &ch.v_lo)) * &qa;
                if !(nonneg_on_interval(&above, a, b)? || nonneg_on_interval(&below, a, b)?) {
                    return Ok(false);
                }
            }
        }
        expected_lo = ch.v_hi.clone();
    }
    Ok(true)
}

fn sweeps_at(piece: &ChartPiece, us: &[Rational], cx: &Ctx) -> Result<Vec<Vec<SweepChamber>>> {
    us.iter()
        .map(|u| v_sweep(&piece.class.eval(u), cx.z, cx.curves, cx.form))
        .collect()
}

fn fit_near(piece: &ChartPiece, a: &Rational, b: &Rational, ks: [i64; 3], cx: &Ctx) -> Option<Vec<FitChamber>> {
    let us: Vec<Rational> = ks.iter().map(|&k| sample(a, b, k, 16)).collect();
    let sweeps = sweeps_at(piece, &us, cx).ok()?;
    fit(&us, &sweeps)
}

/// Candidate u-breaks: crossings of boundary functions fitted near either end.
fn split_points(piece: &ChartPiece, a: &Rational, b: &Rational, cx: &Ctx) -> Vec<Rational> {
    let mut funcs: Vec<Poly1<Rational>> = vec![];
    for ks in [[1, 2, 3], [13, 14, 15]] {
        for ch in fit_near(piece, a, b, ks, cx).unwrap_or_default() {
            for f in [ch.v_lo, ch.v_hi] {
                if !funcs.contains(&f) {
                    funcs.push(f);
                }
            }
        }
    }
    let mut out = vec![];
    for i in 0..funcs.len() {
        for j in i + 1..funcs.len() {
            let d = &funcs[i] - &funcs[j];
            if let Ok(roots) = rational_roots(&d) {
                out.extend(roots.into_iter().filter(|r| r > a && r < b));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn process_cell(
    piece: &ChartPiece,
    a: &Rational,
    b: &Rational,
    depth: usize,
    cx: &Ctx,
    out: &mut Vec<ChartChamber>,
) -> Result<()> {
    let us: Vec<Rational> = [2, 4, 6].iter().map(|&k| sample(a, b, k, 8)).collect();
    let sweeps = sweeps_at(piece, &us, cx)?;
    let reason = match fit(&us, &sweeps) {
        None => "chamber structure differs between samples".to_string(),
        Some(fitted) => {
            let checks: Vec<Rational> = [1, 7].iter().map(|&k| sample(a, b, k, 8)).collect();
            let extra = sweeps_at(piece, &checks, cx)?;
            let sampled = checks.iter().zip(&extra).all(|(u, s)| matches_sample(&fitted, u, s));
            let piece2: DivisorClass<Poly2<Rational>> = piece.class.promote();
            if sampled && verify(&fitted, &piece2, a, b, cx)? {
                for ch in fitted {
                    out.push(ChartChamber {
                        u_lo: a.clone(),
                        u_hi: b.clone(),
                        v_lo: ch.v_lo,
                        v_hi: ch.v_hi,
                        support: ch.support.iter().map(|&i| cx.curves[i].0.clone()).collect(),
                        vol: Poly2::zero(),
                        positive: ch.positive,
                        negative: ch
                            .negative
                            .into_iter()
                            .map(|(i, n)| (cx.curves[i].0.clone(), n))
                            .collect(),
                    });
                }
                return Ok(());
            }
            if sampled {
                "exact verification failed".to_string()
            } else {
                "verification samples disagree with the fit".to_string()
            }
        }
    };
    if depth >= MAX_DEPTH {
        return Err(Error::FitMismatch {
            lo: a.to_string(),
            hi: b.to_string(),
            reason,
        });
    }
    let mut cuts = split_points(piece, a, b, cx);
    if cuts.is_empty() {
        cuts.push((a + b) / int(2));
    }
    let mut edges = vec![a.clone()];
    edges.extend(cuts);
    edges.push(b.clone());
    for w in edges.windows(2) {
        process_cell(piece, &w[0], &w[1], depth + 1, cx, out)?;
    }
    Ok(())
}

fn same_data(x: &ChartChamber, y: &ChartChamber) -> bool {
    x.support == y.support && x.v_lo == y.v_lo && x.v_hi == y.v_hi && x.positive == y.positive && x.negative == y.negative
}

fn merge(mut chambers: Vec<ChartChamber>) -> Vec<ChartChamber> {
    loop {
        let mut merged = false;
        'outer: for i in 0..chambers.len() {
            for j in 0..chambers.len() {
                if i != j && chambers[i].u_hi == chambers[j].u_lo && same_data(&chambers[i], &chambers[j]) {
                    let next = chambers.remove(j);
                    let i = if j < i { i - 1 } else { i };
                    chambers[i].u_hi = next.u_hi;
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return chambers;
        }
    }
}

/// Builds the chamber chart of `D0(u) - vZ` over the pieces of `D0`.
///
/// Each u-cell is sampled at three interior points, the v-walls and positive
/// parts are interpolated in `u`, the fit is checked at two further samples and
/// then verified exactly. A failing cell is split at crossings of its
/// boundary functions (or bisected), up to depth 8.
pub fn build_chart(
    pieces: &[ChartPiece],
    z: &DivisorClass<Rational>,
    curves: &NamedCurves,
    form: &SurfaceForm,
) -> Result<ZariskiChart> {
    if curves.is_empty() {
        return Err(Error::EmptyCurveList);
    }
    let cx = Ctx { z, curves, form };
    let mut chambers = vec![];
    for piece in pieces {
        process_cell(piece, &piece.u_lo, &piece.u_hi, 0, &cx, &mut chambers)?;
    }
    let mut chambers = merge(chambers);
    chambers.sort_by(|x, y| x.u_lo.cmp(&y.u_lo).then(x.v_lo.eval(&x.u_lo).cmp(&y.v_lo.eval(&y.u_lo))));
    for c in chambers.iter_mut() {
        c.vol = form.square(&c.positive)?;
    }
    Ok(ZariskiChart { chambers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::presets;

    fn pu(c0: i64, c1: i64) -> Poly1<Rational> {
        Poly1::new('u', vec![int(c0), int(c1)])
    }

    #[test]
    fn quadric_ruling_chart() {
        let q = presets::exceptional_line_surface();
        // (1 + u)s + (3 - u)l on [0, 1], then 2s + (6 - 4u)l
        let early = DivisorClass::new(q.basis(), vec![pu(1, 1), pu(3, -1)]).unwrap();
        let late = DivisorClass::new(q.basis(), vec![pu(2, 0), pu(6, -4)]).unwrap();
        let pieces = [
            ChartPiece { u_lo: int(0), u_hi: int(1), class: early },
            ChartPiece { u_lo: int(1), u_hi: rat(3, 2), class: late },
        ];
        let z = DivisorClass::new(q.basis(), vec![int(1), int(0)]).unwrap();
        let chart = build_chart(&pieces, &z, &q.curves, &q.form).unwrap();
        assert_eq!(chart.chambers.len(), 2);
        assert_eq!(chart.chambers[0].v_hi, pu(1, 1));
        assert_eq!(chart.chambers[1].v_hi, pu(2, 0));
    }

    #[test]
    fn nef_class_with_big_z_has_one_chamber() {
        let q = presets::exceptional_line_surface();
        let d = DivisorClass::new(q.basis(), vec![pu(2, 0), pu(2, 0)]).unwrap();
        let z = DivisorClass::new(q.basis(), vec![int(1), int(1)]).unwrap();
        let chart = build_chart(&[ChartPiece { u_lo: int(0), u_hi: int(1), class: d }], &z, &q.curves, &q.form).unwrap();
        assert_eq!(chart.chambers.len(), 1);
        assert!(chart.chambers[0].negative.is_empty());
        assert_eq!(chart.chambers[0].v_hi, Poly1::constant('u', int(2)));
    }
}
