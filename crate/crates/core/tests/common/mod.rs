#![allow(dead_code)]

use std::path::PathBuf;

use kstab::cones::{effective_decompose, ConeSpec};
use kstab::lattice::DivisorClass;
use kstab::linalg::Matrix;
use kstab::ratmath::{integrate_univariate, rat, to_f64};
use kstab::scenario::{curve_input, parse_scenario, Kind, Scenario};
use kstab::sinv::SCurveInput;
use kstab::zariski::{is_negative_definite, zariski_decompose};
use kstab::{Error, Poly1, Rational};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

pub fn scenario_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}

pub fn read_scenario(file: &str) -> String {
    std::fs::read_to_string(scenario_dir().join(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub fn load(file: &str) -> Scenario {
    parse_scenario(&read_scenario(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

/// Every bundled scenario as `(file name, contents)`, sorted by name.
pub fn bundled() -> Vec<(String, String)> {
    let mut files: Vec<String> = std::fs::read_dir(scenario_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".toml"))
        .collect();
    files.sort();
    files.into_iter().map(|f| (f.clone(), read_scenario(&f))).collect()
}

/// The eight curve-invariant scenarios with the value each is checked against.
pub const GOLDEN: [(&str, (i64, i64)); 8] = [
    ("plane_section_line.toml", (753, 1120)),
    ("exceptional_line_fibre.toml", (13, 16)),
    ("exceptional_line_r_section.toml", (19, 56)),
    ("quadric_ruling_l1.toml", (109, 112)),
    ("quadric_ruling_l2.toml", (89, 112)),
    ("quadric_conic.toml", (47, 56)),
    ("quadric_ec_negative_part.toml", (5, 224)),
    ("quadric_ec_bound.toml", (223, 224)),
];

/// Scenarios whose chart is built for the scenario's own curve.
pub fn curve_scenarios() -> Vec<&'static str> {
    GOLDEN
        .iter()
        .map(|(f, _)| *f)
        .filter(|f| load(f).kind == Kind::SCurve)
        .collect()
}

/// Small deterministic generator so oracle samples are reproducible.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    /// A rational `k / den` with `k` uniform in `0..=den`, scaled into `[lo, hi]`.
    pub fn rational_in(&mut self, lo: &Rational, hi: &Rational, den: i64) -> Rational {
        let k = (self.next() % (den as u64 + 1)) as i64;
        lo + (hi - lo) * rat(k, den)
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % ((hi - lo + 1) as u64)) as i64
    }
}

/// `D(u, v) = P(u)|Y - vZ` from the schedule, independent of the chart builder.
pub fn restricted(input: &SCurveInput, u: &Rational, v: &Rational) -> DivisorClass<Rational> {
    let i = input
        .schedule
        .chambers
        .iter()
        .position(|c| c.u_lo <= *u && *u <= c.u_hi)
        .expect("u inside the schedule");
    let p = input.schedule.positive(&input.model, i).eval(u);
    let p = input.surface.restriction.restrict(&p).unwrap();
    p.try_sub(&input.z.scale(v)).unwrap()
}

/// `vol(D)`: `P^2` when `D` is pseudo-effective, zero otherwise.
pub fn volume(input: &SCurveInput, d: &DivisorClass<Rational>) -> Rational {
    match zariski_decompose(d, &input.surface.curves, &input.surface.form) {
        Ok(r) => input.surface.form.square(&r.positive).unwrap(),
        Err(Error::NotPseudoEffective(_)) | Err(Error::IndefiniteSupport(_)) => Rational::zero(),
        Err(e) => panic!("{d}: {e}"),
    }
}

/// Largest `v` on a `1/den` grid up to `vcap` at which `D(u, v)` still has positive volume.
pub fn v_extent(input: &SCurveInput, u: &Rational, vcap: i64, den: i64) -> Rational {
    let mut best = Rational::zero();
    for k in 0..=vcap * den {
        let v = rat(k, den);
        if volume(input, &restricted(input, u, &v)).is_positive() {
            best = v;
        }
    }
    best
}

/// Checks the Zariski invariants at random `(u, v)` with `D(u, v)` inside the pseudo-effective cone.
pub fn zariski_invariants(file: &str, samples: usize, seed: u64) -> Result<(), String> {
    let sc = load(file);
    let input = curve_input(&sc).map_err(|e| e.to_string())?;
    let tau = input.schedule.tau();
    let chart = kstab::sinv::volume_term(&input).map_err(|e| e.to_string())?.1;
    let mut rng = Lcg(seed);
    let form = &input.surface.form;
    let curves = &input.surface.curves;
    for _ in 0..samples {
        let u = rng.rational_in(&Rational::zero(), &tau, 997);
        let vmax = chart
            .chambers
            .iter()
            .filter(|c| c.u_lo <= u && u <= c.u_hi)
            .map(|c| c.v_hi.eval(&u))
            .max()
            .unwrap_or_default();
        let v = rng.rational_in(&Rational::zero(), &vmax, 991);
        let d = restricted(&input, &u, &v);
        let r = zariski_decompose(&d, curves, form).map_err(|e| format!("{file} at u={u}, v={v}: {e}"))?;
        let n = r.negative_class(curves);
        if &r.positive + &n != d {
            return Err(format!("{file} at u={u}, v={v}: P + N != D"));
        }
        for (k, (name, c)) in curves.iter().enumerate() {
            let pc = form.pair(&r.positive, c).unwrap();
            if r.support.contains(&k) && !pc.is_zero() {
                return Err(format!("{file} at u={u}, v={v}: P.{name} = {pc} on the support"));
            }
            if pc.is_negative() {
                return Err(format!("{file} at u={u}, v={v}: P.{name} = {pc} < 0"));
            }
        }
        if r.negative.iter().any(|(_, c)| !c.is_positive()) {
            return Err(format!("{file} at u={u}, v={v}: nonpositive negative-part coefficient"));
        }
        if !r.support.is_empty() {
            let g: Matrix<Rational> = r
                .support
                .iter()
                .map(|&i| r.support.iter().map(|&j| form.pair(&curves[i].1, &curves[j].1).unwrap()).collect())
                .collect();
            if !is_negative_definite(&g) {
                return Err(format!("{file} at u={u}, v={v}: support Gram not negative definite"));
            }
        }
        let p2 = form.square(&r.positive).unwrap();
        let hit = chart.chambers.iter().find(|c| c.contains(&u, &v)).map(|c| c.vol.eval(&u, &v));
        if hit.as_ref() != Some(&p2) {
            return Err(format!("{file} at u={u}, v={v}: chart gives {hit:?}, direct decomposition {p2}"));
        }
    }
    Ok(())
}

/// Midpoint-rule value of the curve invariant on an `n x n` grid, using direct decompositions.
pub fn s_curve_numeric(file: &str, n: usize) -> f64 {
    let sc = load(file);
    let input = curve_input(&sc).unwrap();
    let tau = input.schedule.tau();
    let deg = to_f64(&input.model.degree());
    let vcap = 8;
    // One coarse sweep fixes the v-range; the grid then covers [0, vtop].
    let vtop = (0..=6)
        .map(|k| v_extent(&input, &(&tau * rat(k, 6)), vcap, 8))
        .max()
        .unwrap()
        + rat(1, 8);
    let hu = &tau / rat(n as i64, 1);
    let hv = &vtop / rat(n as i64, 1);
    let vol: f64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let u = &hu * rat(2 * i as i64 + 1, 2);
            (0..n)
                .map(|j| {
                    let v = &hv * rat(2 * j as i64 + 1, 2);
                    to_f64(&volume(&input, &restricted(&input, &u, &v)))
                })
                .sum::<f64>()
        })
        .sum::<f64>()
        * to_f64(&hu)
        * to_f64(&hv);
    let neg: f64 = (0..n)
        .map(|i| {
            let u = &hu * rat(2 * i as i64 + 1, 2);
            let k = input.schedule.chambers.iter().position(|c| c.u_lo <= u && u <= c.u_hi).unwrap();
            let ord = input.ord[k].eval(&u);
            if ord.is_zero() {
                return 0.0;
            }
            let p = input.schedule.positive(&input.model, k).eval(&u);
            let y = &input.schedule.divisor;
            to_f64(&(input.model.form.triple_product(&p, &p, y).unwrap() * ord))
        })
        .sum::<f64>()
        * to_f64(&hu);
    3.0 / deg * (neg + vol)
}

/// Midpoint rule for a univariate polynomial over `[a, b]` with `n` cells.
pub fn midpoint(p: &Poly1<Rational>, a: &Rational, b: &Rational, n: usize) -> f64 {
    let (a, b) = (to_f64(a), to_f64(b));
    let cs: Vec<f64> = p.coeffs().iter().map(to_f64).collect();
    let h = (b - a) / n as f64;
    (0..n)
        .map(|k| {
            let x = a + (k as f64 + 0.5) * h;
            cs.iter().rev().fold(0.0, |acc, c| acc * x + c)
        })
        .sum::<f64>()
        * h
}

/// Exact versus numeric value of every univariate integral behind a curve scenario
/// (negative-part integrands and the v-integrated volume per chamber); worst error.
pub fn one_d_integral_error(file: &str) -> f64 {
    let sc = load(file);
    let input = curve_input(&sc).unwrap();
    let mut worst: f64 = 0.0;
    let y = input.schedule.divisor.promote::<Poly1<Rational>>();
    for (k, ch) in input.schedule.chambers.iter().enumerate() {
        let p = input.schedule.positive(&input.model, k);
        let f = &input.model.form.triple_product(&p, &p, &y).unwrap() * &input.ord[k].clone().with_var('u');
        let exact = integrate_univariate(&f, &ch.u_lo, &ch.u_hi);
        worst = worst.max((to_f64(&exact) - midpoint(&f, &ch.u_lo, &ch.u_hi, 4000)).abs());
    }
    let (_, chart) = kstab::sinv::volume_term(&input).unwrap();
    for c in &chart.chambers {
        let anti = c.vol.antiderivative_v();
        let inner = &anti.subst_v(&c.v_hi) - &anti.subst_v(&c.v_lo);
        let exact = c.integral().unwrap();
        worst = worst.max((to_f64(&exact) - midpoint(&inner, &c.u_lo, &c.u_hi, 4000)).abs());
    }
    worst
}

/// Whether some integral functional with entries in `[-r, r]` is nonnegative on the cone and negative on `d`.
pub fn separated(d: &DivisorClass<Rational>, cone: &ConeSpec, r: i64) -> bool {
    let n = d.coeffs().len();
    let mut w = vec![-r; n];
    loop {
        let dot = |x: &DivisorClass<Rational>| -> Rational {
            x.coeffs().iter().zip(&w).map(|(c, wi)| c * Rational::from_integer((*wi).into())).sum()
        };
        if cone.generators().iter().all(|g| !dot(g).is_negative()) && dot(d).is_negative() {
            return true;
        }
        let mut i = 0;
        while i < n && w[i] == r {
            w[i] = -r;
            i += 1;
        }
        if i == n {
            return false;
        }
        w[i] += 1;
    }
}

/// Whether `d` is a combination of the generators with coefficients in `{0, 1/2, ..., r}`.
pub fn grid_combination(d: &DivisorClass<Rational>, cone: &ConeSpec, r: i64) -> bool {
    let gens = cone.generators();
    let steps = 2 * r + 1;
    let total = (steps as u64).pow(gens.len() as u32);
    (0..total).any(|mut idx| {
        let mut acc = DivisorClass::zero(d.basis());
        for g in gens {
            let k = (idx % steps as u64) as i64;
            idx /= steps as u64;
            acc = &acc + &g.scale(&rat(k, 2));
        }
        acc == *d
    })
}

/// Agreement of `effective_decompose` with both grid oracles on `count` random classes.
pub fn effdec_oracle(count: usize, seed: u64) -> Result<(), String> {
    let m = kstab::lattice::presets::threefold();
    let cone = ConeSpec::new(m.effective.clone()).unwrap();
    let mut rng = Lcg(seed);
    for _ in 0..count {
        let coeffs: Vec<Rational> = (0..3).map(|_| Rational::from_integer(rng.int_in(-4, 4).into())).collect();
        let d = DivisorClass::new(m.basis(), coeffs).unwrap();
        let r = effective_decompose(&d, &cone).map_err(|e| e.to_string())?;
        let sep = separated(&d, &cone, 4);
        match r.decomposition() {
            Some(dec) => {
                if sep {
                    return Err(format!("{d}: decomposed but a separating functional exists"));
                }
                if dec.coeffs.iter().any(|c| c.is_negative()) || dec.recombine(&cone) != d {
                    return Err(format!("{d}: bad decomposition ({:?})", dec.coeffs));
                }
            }
            None => {
                if !sep {
                    return Err(format!("{d}: reported infeasible but no small separating functional"));
                }
                if grid_combination(&d, &cone, 6) {
                    return Err(format!("{d}: reported infeasible but a grid combination exists"));
                }
            }
        }
    }
    Ok(())
}
