use num_traits::{Signed, Zero};

use super::decompose::{check_support, zariski_decompose, NamedCurves};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceForm};
use crate::linalg::solve;
use crate::ratmath::{rational_roots, Poly1, Rational};

/// One v-interval of a sweep at fixed `u`; polynomials are in `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepChamber {
    pub v_lo: Rational,
    pub v_hi: Rational,
    pub support: Vec<usize>,
    pub positive: DivisorClass<Poly1<Rational>>,
    pub negative: Vec<(usize, Poly1<Rational>)>,
    pub vol: Poly1<Rational>,
}

struct Symbolic {
    positive: DivisorClass<Poly1<Rational>>,
    negative: Vec<Poly1<Rational>>,
}

fn lin(c0: &Rational, c1: &Rational) -> Poly1<Rational> {
    Poly1::linear('v', c1.clone(), c0.clone())
}

/// `P(v) = D0 - vZ - sum a_j(v) C_j` with `P(v) . C_i = 0` on the support.
fn solve_support(
    d0: &DivisorClass<Rational>,
    z: &DivisorClass<Rational>,
    support: &[usize],
    curves: &NamedCurves,
    form: &SurfaceForm,
) -> Result<Symbolic> {
    let g = check_support(curves, support, form)?;
    let rd = support
        .iter()
        .map(|&i| form.pair(d0, &curves[i].1))
        .collect::<Result<Vec<_>>>()?;
    let rz = support
        .iter()
        .map(|&i| form.pair(z, &curves[i].1))
        .collect::<Result<Vec<_>>>()?;
    let (x, y) = if support.is_empty() {
        (vec![], vec![])
    } else {
        (solve(&g, &rd)?, solve(&g, &rz)?)
    };
    // a_j(v) = x_j - v y_j
    let mut p0 = d0.clone();
    let mut p1 = -z;
    for ((&i, xj), yj) in support.iter().zip(&x).zip(&y) {
        p0 = &p0 - &curves[i].1.scale(xj);
        p1 = &p1 + &curves[i].1.scale(yj);
    }
    let coeffs = p0.coeffs().iter().zip(p1.coeffs()).map(|(a, b)| lin(a, b)).collect();
    let negative = x.iter().zip(&y).map(|(a, b)| lin(a, &-b)).collect();
    Ok(Symbolic {
        positive: DivisorClass::new(d0.basis(), coeffs)?,
        negative,
    })
}

fn pairing(p: &DivisorClass<Poly1<Rational>>, c: &DivisorClass<Rational>, form: &SurfaceForm) -> Result<Poly1<Rational>> {
    Ok(form.pair_curve(p, c)?.with_var('v'))
}

/// Smallest root of `vol` in `[v0, limit]` (any root at or beyond `v0` when `limit` is `None`).
fn first_vol_root(vol: &Poly1<Rational>, v0: &Rational, limit: Option<&Rational>) -> Result<Option<Rational>> {
    if vol.is_zero() {
        return Ok(Some(v0.clone()));
    }
    match rational_roots(vol) {
        Ok(roots) => Ok(roots.into_iter().find(|r| r >= v0)),
        Err(Error::IrrationalBreakpoint(msg)) => {
            // harmless only if no real root lies in the range that matters
            let Some(lim) = limit else {
                return Err(Error::IrrationalBreakpoint(msg));
            };
            let a = vol.coeff(2);
            let vertex = -vol.coeff(1) / (&a + &a);
            let positive_inside = vol.eval(lim).is_positive()
                && (vertex <= *v0 || vertex >= *lim || vol.eval(&vertex).is_positive());
            if positive_inside {
                Ok(None)
            } else {
                Err(Error::IrrationalBreakpoint(msg))
            }
        }
        Err(e) => Err(e),
    }
}

/// Sweeps `D0 - vZ` upward from `v = 0` until its volume vanishes.
///
/// A new chamber starts whenever an off-support curve's pairing with the
/// positive part reaches zero while decreasing; curves reaching zero at the
/// same `v` enter the support together.
pub fn v_sweep(
    d0: &DivisorClass<Rational>,
    z: &DivisorClass<Rational>,
    curves: &NamedCurves,
    form: &SurfaceForm,
) -> Result<Vec<SweepChamber>> {
    let start = zariski_decompose(d0, curves, form)?;
    let mut support = start.support;
    let mut v0 = Rational::zero();
    let mut out = vec![];
    loop {
        // absorb every curve that is tied at v0 and about to go negative
        let sym = loop {
            let sym = solve_support(d0, z, &support, curves, form)?;
            let mut tied = vec![];
            for (i, (_, c)) in curves.iter().enumerate() {
                if support.contains(&i) {
                    continue;
                }
                let f = pairing(&sym.positive, c, form)?;
                let at = f.eval(&v0);
                if at.is_negative() || (at.is_zero() && f.coeff(1).is_negative()) {
                    tied.push(i);
                }
            }
            if tied.is_empty() {
                break sym;
            }
            support.extend(tied);
            support.sort_unstable();
        };
        for (j, a) in sym.negative.iter().enumerate() {
            if a.eval(&v0).is_zero() && a.coeff(1).is_negative() {
                return Err(Error::SupportShrink(curves[support[j]].0.clone()));
            }
        }
        // next wall
        let mut next: Option<Rational> = None;
        for (i, (_, c)) in curves.iter().enumerate() {
            if support.contains(&i) {
                continue;
            }
            let f = pairing(&sym.positive, c, form)?;
            if f.coeff(1).is_negative() {
                let r = -f.coeff(0) / f.coeff(1);
                if r > v0 && next.as_ref().is_none_or(|n| r < *n) {
                    next = Some(r);
                }
            }
        }
        let vol = form.square(&sym.positive)?.with_var('v');
        let end = first_vol_root(&vol, &v0, next.as_ref())?;
        let (v_hi, terminal) = match (end, next) {
            (Some(e), Some(n)) if e <= n => (e, true),
            (Some(e), None) => (e, true),
            (_, Some(n)) => (n, false),
            (None, None) => return Err(Error::UnboundedSweep(v0.to_string())),
        };
        for (j, a) in sym.negative.iter().enumerate() {
            if a.coeff(1).is_negative() {
                let r = -a.coeff(0) / a.coeff(1);
                if r > v0 && r < v_hi {
                    return Err(Error::SupportShrink(curves[support[j]].0.clone()));
                }
            }
        }
        if v_hi > v0 {
            out.push(SweepChamber {
                v_lo: v0.clone(),
                v_hi: v_hi.clone(),
                support: support.clone(),
                positive: sym.positive,
                negative: support.iter().cloned().zip(sym.negative).collect(),
                vol,
            });
        }
        if terminal {
            return Ok(out);
        }
        v0 = v_hi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::presets;
    use crate::ratmath::{int, rat};

    fn class(b: &std::sync::Arc<crate::lattice::LatticeBasis>, c: Vec<Rational>) -> DivisorClass<Rational> {
        DivisorClass::new(b, c).unwrap()
    }

    /// `(8 - 5u)l + (2u - 3)(E2 + E3 + E4) + (u - 2)E1`, valid for u in [1, 3/2]
    fn plane_late(u: &Rational) -> DivisorClass<Rational> {
        let s = presets::plane_surface();
        let e = int(2) * u - int(3);
        class(s.basis(), vec![int(8) - int(5) * u, u - int(2), e.clone(), e.clone(), e])
    }

    #[test]
    fn plane_sweep_in_the_late_range() {
        let s = presets::plane_surface();
        let z = s.restriction.restrict(&s.class).unwrap();
        let ch = v_sweep(&plane_late(&rat(5, 4)), &z, &s.curves, &s.form).unwrap();
        let bounds: Vec<_> = ch.iter().map(|c| (c.v_lo.clone(), c.v_hi.clone())).collect();
        assert_eq!(bounds, [(int(0), rat(1, 2)), (rat(1, 2), rat(5, 8))]);
        let names: Vec<&str> = ch[1].support.iter().map(|&i| s.curves[i].0.as_str()).collect();
        assert_eq!(names, ["L12", "L13", "L14"]);
    }

    #[test]
    fn plane_sweep_in_the_early_range() {
        let s = presets::plane_surface();
        let z = s.restriction.restrict(&s.class).unwrap();
        // (4 - u)l - E1 - ... - E4
        let u = rat(1, 2);
        let d = class(s.basis(), vec![int(4) - &u, int(-1), int(-1), int(-1), int(-1)]);
        let ch = v_sweep(&d, &z, &s.curves, &s.form).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].v_hi, int(2) - u);
        assert!(ch[0].support.is_empty());
    }

    #[test]
    fn quadric_l1_case() {
        let q = presets::quadric_surface();
        let u = rat(29, 20);
        // -e1 - e2 + (4 - 2u)l1 + (4 - 2u)l2
        let c = int(4) - int(2) * &u;
        let d = class(q.basis(), vec![c.clone(), c, int(-1), int(-1)]);
        let z = class(q.basis(), vec![int(1), int(0), int(0), int(0)]);
        let ch = v_sweep(&d, &z, &q.curves, &q.form).unwrap();
        assert_eq!(ch.last().unwrap().v_hi, rat(1, 5));
    }

    #[test]
    fn unbounded_when_z_is_not_constraining() {
        let q = presets::exceptional_line_surface();
        let d = class(q.basis(), vec![int(1), int(1)]);
        let z = class(q.basis(), vec![int(-1), int(0)]);
        assert!(matches!(v_sweep(&d, &z, &q.curves, &q.form), Err(Error::UnboundedSweep(_))));
    }
}
