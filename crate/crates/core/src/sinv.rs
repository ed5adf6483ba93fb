//! S-invariants of divisors and of curves on surfaces, assembled from the lattice,
//! cone, Zariski and integration layers.

use num_traits::{Signed, Zero};

use crate::cones::{effective_decompose, pseudoeffective_threshold, ConeSpec};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, SurfaceModel, ThreefoldModel};
use crate::ratmath::{int, integrate_univariate, rat, Poly1, Rational};
use crate::zariski::{build_chart, ChartPiece, ZariskiChart};

/// One u-interval of a threefold decomposition `-K - uY = P(u) + N(u)`.
#[derive(Clone, Debug)]
pub struct ScheduleChamber {
    pub u_lo: Rational,
    pub u_hi: Rational,
    /// `N(u) = sum coeff(u) * class`, with a display name per term.
    pub negative: Vec<(String, DivisorClass<Rational>, Poly1<Rational>)>,
}

#[derive(Clone, Debug)]
pub struct Schedule {
    pub divisor: DivisorClass<Rational>,
    pub chambers: Vec<ScheduleChamber>,
}

impl Schedule {
    pub fn tau(&self) -> Rational {
        self.chambers.last().map(|c| c.u_hi.clone()).unwrap_or_else(Rational::zero)
    }

    /// A schedule with no negative part on `[0, tau]`.
    pub fn trivial(divisor: DivisorClass<Rational>, tau: Rational) -> Self {
        Schedule {
            divisor,
            chambers: vec![ScheduleChamber {
                u_lo: Rational::zero(),
                u_hi: tau,
                negative: vec![],
            }],
        }
    }

    /// `P(u) = -K - uY - N(u)` on chamber `i`, with coefficients in `u`.
    pub fn positive(&self, model: &ThreefoldModel, i: usize) -> DivisorClass<Poly1<Rational>> {
        let k: DivisorClass<Poly1<Rational>> = model.anticanonical.promote();
        let y: DivisorClass<Poly1<Rational>> = self.divisor.promote();
        let mut p = &k - &y.scale(&Poly1::var('u'));
        for (_, d, c) in &self.chambers[i].negative {
            p = &p - &d.promote::<Poly1<Rational>>().scale(c);
        }
        p
    }

    /// Checks contiguity, the sign conditions at sample points, and that the
    /// schedule ends at the pseudo-effective threshold of `Y`.
    pub fn validate(&self, model: &ThreefoldModel) -> Result<()> {
        let bad = |m: String| Err(Error::Schedule(m));
        if self.chambers.is_empty() {
            return bad("no chambers".into());
        }
        let mut expected = Rational::zero();
        for (i, ch) in self.chambers.iter().enumerate() {
            if ch.u_lo != expected || ch.u_hi <= ch.u_lo {
                return bad(format!("chamber {i} is [{}, {}], expected to start at {expected}", ch.u_lo, ch.u_hi));
            }
            expected = ch.u_hi.clone();
            let p = self.positive(model, i);
            for k in 0..=8 {
                let u = &ch.u_lo + (&ch.u_hi - &ch.u_lo) * rat(k, 8);
                for (name, _, c) in &ch.negative {
                    if c.eval(&u).is_negative() {
                        return bad(format!("coefficient of {name} is negative at u = {u}"));
                    }
                }
                let pu = p.eval(&u);
                for curve in &model.mori {
                    let v = curve.pair(&pu)?;
                    if v.is_negative() {
                        return bad(format!("P({u}) . {} = {v} < 0", curve.name()));
                    }
                }
                let cube = model.form.cube(&pu)?;
                if cube.is_negative() {
                    return bad(format!("P({u})^3 = {cube} < 0"));
                }
            }
        }
        let last = self.chambers.len() - 1;
        let tau = self.tau();
        let end = model.form.cube(&self.positive(model, last).eval(&tau))?;
        if !end.is_zero() {
            return bad(format!("P(tau)^3 = {end} at tau = {tau}, expected 0"));
        }
        let cone = ConeSpec::new(model.effective.clone())?;
        let computed = pseudoeffective_threshold(&model.anticanonical, &self.divisor, &cone)?;
        if computed != tau {
            return Err(Error::TauMismatch {
                computed: computed.to_string(),
                scheduled: tau.to_string(),
            });
        }
        Ok(())
    }
}

/// `S_X(Y) = (1/(-K)^3) * int_0^tau P(u)^3 du`.
pub fn s_divisor(model: &ThreefoldModel, sched: &Schedule) -> Result<Rational> {
    sched.validate(model)?;
    let mut total = Rational::zero();
    for (i, ch) in sched.chambers.iter().enumerate() {
        let cube = model.form.cube(&sched.positive(model, i))?;
        total += integrate_univariate(&cube, &ch.u_lo, &ch.u_hi);
    }
    Ok(total / model.degree())
}

/// Everything needed to evaluate the curve invariant `S(W^Y; Z)`.
#[derive(Clone, Debug)]
pub struct SCurveInput {
    pub model: ThreefoldModel,
    pub surface: SurfaceModel,
    pub z: DivisorClass<Rational>,
    pub schedule: Schedule,
    /// `ord_Z(N(u)|_Y)` per schedule chamber.
    pub ord: Vec<Poly1<Rational>>,
}

/// The two terms of the curve invariant together with the chart behind the second.
#[derive(Clone, Debug)]
pub struct SCurveValue {
    pub negative_part: Rational,
    pub volume: Rational,
    pub chart: ZariskiChart,
}

impl SCurveValue {
    pub fn total(&self) -> Rational {
        &self.negative_part + &self.volume
    }
}

/// Multiplicity of `z` in `N(u)|_Y`, read off from the terms restricting to `z`.
pub fn restricted_ord(surface: &SurfaceModel, sched: &Schedule, z: &DivisorClass<Rational>) -> Result<Vec<Poly1<Rational>>> {
    sched
        .chambers
        .iter()
        .map(|ch| {
            let mut acc = Poly1::zero_in('u');
            for (_, d, c) in &ch.negative {
                if surface.restriction.restrict(d)? == *z {
                    acc = &acc + c;
                }
            }
            Ok(acc)
        })
        .collect()
}

impl SCurveInput {
    fn check_ord(&self) -> Result<()> {
        if self.ord.len() != self.schedule.chambers.len() {
            return Err(Error::Schedule(format!(
                "{} ord entries for {} chambers",
                self.ord.len(),
                self.schedule.chambers.len()
            )));
        }
        let computed = restricted_ord(&self.surface, &self.schedule, &self.z)?;
        for (i, (d, c)) in self.ord.iter().zip(&computed).enumerate() {
            if d.clone().with_var('u') != c.clone().with_var('u') {
                return Err(Error::OrdMismatch {
                    chamber: i,
                    declared: d.to_string(),
                    computed: c.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Pieces of `P(u)|_Y` for the chart builder.
    pub fn restricted_pieces(&self) -> Result<Vec<ChartPiece>> {
        self.schedule
            .chambers
            .iter()
            .enumerate()
            .map(|(i, ch)| {
                Ok(ChartPiece {
                    u_lo: ch.u_lo.clone(),
                    u_hi: ch.u_hi.clone(),
                    class: self.surface.restriction.restrict(&self.schedule.positive(&self.model, i))?,
                })
            })
            .collect()
    }

    pub fn with_z(&self, z: DivisorClass<Rational>) -> Result<SCurveInput> {
        let ord = restricted_ord(&self.surface, &self.schedule, &z)?;
        Ok(SCurveInput {
            z,
            ord,
            ..self.clone()
        })
    }
}

/// `(3/(-K)^3) * int (P(u)^2 . Y) ord(u) du`.
pub fn negative_part_term(input: &SCurveInput) -> Result<Rational> {
    input.check_ord()?;
    let y = input.schedule.divisor.promote::<Poly1<Rational>>();
    let mut total = Rational::zero();
    for (i, ch) in input.schedule.chambers.iter().enumerate() {
        if input.ord[i].is_zero() {
            continue;
        }
        let p = input.schedule.positive(&input.model, i);
        let p2y = input.model.form.triple_product(&p, &p, &y)?;
        total += integrate_univariate(&(&p2y * &input.ord[i].clone().with_var('u')), &ch.u_lo, &ch.u_hi);
    }
    Ok(total * int(3) / input.model.degree())
}

/// `(3/(-K)^3) * int int vol(P(u)|_Y - vZ) dv du` and its chart.
pub fn volume_term(input: &SCurveInput) -> Result<(Rational, ZariskiChart)> {
    let pieces = input.restricted_pieces()?;
    let chart = build_chart(&pieces, &input.z, &input.surface.curves, &input.surface.form)?;
    let v = chart.integrate_vol()? * int(3) / input.model.degree();
    Ok((v, chart))
}

/// Both terms of `S(W^Y; Z)` after validating the schedule.
pub fn evaluate_s_curve(input: &SCurveInput) -> Result<SCurveValue> {
    input.schedule.validate(&input.model)?;
    let negative_part = negative_part_term(input)?;
    let (volume, chart) = volume_term(input)?;
    Ok(SCurveValue {
        negative_part,
        volume,
        chart,
    })
}

pub fn s_curve(input: &SCurveInput) -> Result<Rational> {
    Ok(evaluate_s_curve(input)?.total())
}

/// Requires `Z - zdom` to be effective on `Y`, i.e. `zdom` is dominated by `Z`.
fn check_dominance(input: &SCurveInput, zdom: &DivisorClass<Rational>) -> Result<()> {
    let diff = input.z.try_sub(zdom)?;
    let cone = ConeSpec::new(input.surface.curves.clone())?;
    if effective_decompose(&diff, &cone)?.is_feasible() {
        Ok(())
    } else {
        Err(Error::DominanceViolation {
            curve: input.z.to_string(),
            dominating: zdom.to_string(),
        })
    }
}

/// `S(W^Y; zdom)`, an upper bound for the volume term of `S(W^Y; Z)` when `Z - zdom` is effective.
pub fn dominance_bound(input: &SCurveInput, zdom: &DivisorClass<Rational>) -> Result<Rational> {
    check_dominance(input, zdom)?;
    s_curve(&input.with_z(zdom.clone())?)
}

/// Negative-part term of `Z` plus the volume term evaluated with `zdom`.
pub fn s_curve_bound(input: &SCurveInput, zdom: &DivisorClass<Rational>) -> Result<Rational> {
    check_dominance(input, zdom)?;
    input.schedule.validate(&input.model)?;
    let neg = negative_part_term(input)?;
    let (vol, _) = volume_term(&input.with_z(zdom.clone())?)?;
    Ok(neg + vol)
}
