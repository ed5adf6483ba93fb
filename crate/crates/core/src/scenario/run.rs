use std::time::Instant;

use num_traits::Zero;

use super::report::{Entry, Report, Status};
use super::{join, parse_scenario, Checks, ConeQuery, Expected, Kind, Scenario};
use crate::cones::{effective_decompose, pseudoeffective_threshold, ConeSpec, EffResult};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, ThreefoldModel};
use crate::ratmath::{Poly1, Poly2, Rational};
use crate::sinv::{
    dominance_bound, evaluate_s_curve, negative_part_term, restricted_ord, s_curve_bound, s_divisor, volume_term, Schedule,
    SCurveInput,
};
use crate::zariski::ZariskiChart;

/// One line of a verification trail.
#[derive(Clone, Debug, PartialEq)]
pub struct TrailLine {
    pub label: String,
    pub ok: bool,
    pub detail: String,
}

impl std::fmt::Display for TrailLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mark = if self.ok { "ok" } else { "MISMATCH" };
        write!(f, "{}: {} [{mark}]", self.label, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Computed {
    Value(Rational),
    Vector(Vec<Rational>),
    /// Feasibility at each sampled parameter value.
    Sweep(Vec<(Option<Rational>, bool)>),
    Check(String),
}

impl std::fmt::Display for Computed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Computed::Value(q) => write!(f, "{q}"),
            Computed::Vector(v) => write!(f, "({})", join(v)),
            Computed::Sweep(s) => {
                let feasible: Vec<String> = s
                    .iter()
                    .filter(|(_, ok)| *ok)
                    .map(|(a, _)| a.as_ref().map_or("-".to_string(), |a| a.to_string()))
                    .collect();
                if feasible.is_empty() {
                    write!(f, "infeasible at all {} samples", s.len())
                } else {
                    write!(f, "feasible at {}", feasible.join(", "))
                }
            }
            Computed::Check(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Evaluation {
    pub computed: Computed,
    pub trail: Vec<TrailLine>,
    pub chart: Option<ZariskiChart>,
}

impl Evaluation {
    pub fn matches(&self, expected: &Expected) -> bool {
        match (&self.computed, expected) {
            (Computed::Value(q), Expected::Value(c, e)) => c.holds(q, e),
            (Computed::Vector(v), Expected::Vector(e)) => v == e,
            (Computed::Sweep(s), Expected::Infeasible) => s.iter().all(|(_, ok)| !ok),
            (Computed::Check(s), Expected::Holds) => s == "holds",
            _ => false,
        }
    }

    pub fn checks_pass(&self) -> bool {
        self.trail.iter().all(|t| t.ok)
    }
}

fn line(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> TrailLine {
    TrailLine {
        label: label.into(),
        ok,
        detail: detail.into(),
    }
}

fn value_line(label: &str, got: &Rational, want: &Option<Rational>, out: &mut Vec<TrailLine>) {
    match want {
        Some(w) => out.push(line(label, got == w, format!("{got} (expected {w})"))),
        None => out.push(line(label, true, got.to_string())),
    }
}

/// Compares two collections as sets and reports what is missing or extra.
fn set_line<T: PartialEq + std::fmt::Display>(label: &str, got: &[T], want: &[T]) -> TrailLine {
    let missing: Vec<&T> = want.iter().filter(|w| !got.contains(w)).collect();
    let extra: Vec<&T> = got.iter().filter(|g| !want.contains(g)).collect();
    let shown = format!("{{{}}}", join(got));
    if missing.is_empty() && extra.is_empty() {
        line(label, true, shown)
    } else {
        let m: Vec<String> = missing.iter().map(|x| x.to_string()).collect();
        let e: Vec<String> = extra.iter().map(|x| x.to_string()).collect();
        line(label, false, format!("{shown}; missing {{{}}}, unexpected {{{}}}", m.join(", "), e.join(", ")))
    }
}

fn dedup<T: PartialEq>(items: impl IntoIterator<Item = T>) -> Vec<T> {
    let mut out = vec![];
    for x in items {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn model(sc: &Scenario) -> Result<&ThreefoldModel> {
    sc.model.as_ref().ok_or_else(|| Error::scenario("threefold", "", "missing section"))
}

fn schedule(sc: &Scenario) -> Result<&Schedule> {
    sc.schedule.as_ref().ok_or_else(|| Error::scenario("schedule", "", "missing section"))
}

/// The curve-invariant input assembled from the scenario.
pub fn curve_input(sc: &Scenario) -> Result<SCurveInput> {
    let m = model(sc)?.clone();
    let surface = sc.surface.clone().ok_or_else(|| Error::scenario("surface", "", "missing section"))?;
    let sched = schedule(sc)?.clone();
    let c = sc.curve.as_ref().ok_or_else(|| Error::scenario("curve", "", "missing section"))?;
    let ord = match &c.ord {
        Some(o) => o.clone(),
        None => restricted_ord(&surface, &sched, &c.z)?,
    };
    Ok(SCurveInput {
        model: m,
        surface,
        z: c.z.clone(),
        schedule: sched,
        ord,
    })
}

fn common_checks(m: &ThreefoldModel, sched: Option<&Schedule>, checks: &Checks, trail: &mut Vec<TrailLine>) -> Result<()> {
    if let Some(d) = &checks.degree {
        value_line("(-K)^3", &m.degree(), &Some(d.clone()), trail);
    }
    if let (Some(t), Some(s)) = (&checks.tau, sched) {
        value_line("schedule ends at", &s.tau(), &Some(t.clone()), trail);
        let cone = ConeSpec::new(m.effective.clone())?;
        let tau = pseudoeffective_threshold(&m.anticanonical, &s.divisor, &cone)?;
        value_line("pseudo-effective threshold", &tau, &Some(t.clone()), trail);
    }
    Ok(())
}

fn chart_checks(chart: &ZariskiChart, checks: &Checks, trail: &mut Vec<TrailLine>) {
    if let Some(n) = checks.chambers {
        let got = chart.chambers.len();
        trail.push(line("chart chambers", got == n, format!("{got} (expected {n})")));
    }
    if let Some(b) = &checks.u_breaks {
        let got = chart.u_breaks();
        trail.push(line("u-breaks", got == *b, format!("{{{}}}", join(&got))));
    }
    if let Some(b) = &checks.v_bounds {
        let got: Vec<Poly1<Rational>> = chart.v_bounds().into_iter().map(|p| p.with_var('u')).collect();
        let want: Vec<Poly1<Rational>> = b.iter().map(|p| p.clone().with_var('u')).collect();
        trail.push(set_line("v-bounds", &got, &want));
    }
    if let Some(w) = &checks.integrands {
        let got: Vec<Poly2<Rational>> = dedup(chart.chambers.iter().map(|c| c.vol.clone()));
        trail.push(set_line("vol integrands", &got, w));
    }
}

fn negative_integrands(input: &SCurveInput) -> Result<Vec<Poly1<Rational>>> {
    let y = input.schedule.divisor.promote::<Poly1<Rational>>();
    let mut out = vec![];
    for (i, ord) in input.ord.iter().enumerate() {
        if ord.is_zero() {
            continue;
        }
        let p = input.schedule.positive(&input.model, i);
        let p2y = input.model.form.triple_product(&p, &p, &y)?;
        out.push((&p2y * &ord.clone().with_var('u')).with_var('u'));
    }
    Ok(out)
}

fn curve_checks(input: &SCurveInput, neg: &Rational, vol: &Rational, checks: &Checks, trail: &mut Vec<TrailLine>) -> Result<()> {
    if let Some(w) = &checks.negative_integrands {
        let got = dedup(negative_integrands(input)?);
        let want: Vec<Poly1<Rational>> = w.iter().map(|p| p.clone().with_var('u')).collect();
        trail.push(set_line("negative-part integrands", &got, &want));
    }
    value_line("negative-part term", neg, &checks.negative_part, trail);
    value_line("volume term", vol, &checks.volume, trail);
    Ok(())
}

fn bound_check(value: &Rational, checks: &Checks, trail: &mut Vec<TrailLine>) {
    if let Some((c, b)) = &checks.bound {
        trail.push(line("bound", c.holds(value, b), format!("{value} {} {b}", c.symbol())));
    }
}

fn cone_spec(q: &ConeQuery) -> Result<ConeSpec> {
    ConeSpec::new(q.generators.clone())
}

fn class_at(q: &ConeQuery, sc: &Scenario, a: Option<&Rational>) -> Result<DivisorClass<Rational>> {
    let b = model(sc)?.basis();
    let coeffs = q
        .class
        .iter()
        .map(|c| match (a, &q.param) {
            (Some(a), Some(p)) => {
                let mut at = std::collections::BTreeMap::new();
                at.insert(p.as_str(), a.clone());
                c.eval(&at)
            }
            _ => c.eval::<Rational>(&Default::default()),
        })
        .collect::<Result<Vec<_>>>()?;
    DivisorClass::new(b, coeffs)
}

/// Evaluates a scenario without comparing against its expectation.
pub fn evaluate(sc: &Scenario) -> Result<Evaluation> {
    let mut trail = vec![];
    let checks = &sc.checks;
    match sc.kind {
        Kind::SCurve | Kind::NegativePart | Kind::SCurveBound => {
            let input = curve_input(sc)?;
            common_checks(&input.model, Some(&input.schedule), checks, &mut trail)?;
            let ord: Vec<String> = input.ord.iter().map(|o| o.to_string()).collect();
            trail.push(line("ord of Z in N(u)|Y per chamber", true, ord.join(", ")));
            let value = evaluate_s_curve(&input)?;
            let (computed, chart) = match sc.kind {
                Kind::SCurve => {
                    curve_checks(&input, &value.negative_part, &value.volume, checks, &mut trail)?;
                    chart_checks(&value.chart, checks, &mut trail);
                    (value.total(), value.chart)
                }
                Kind::NegativePart => {
                    curve_checks(&input, &value.negative_part, &value.volume, checks, &mut trail)?;
                    chart_checks(&value.chart, checks, &mut trail);
                    (negative_part_term(&input)?, value.chart)
                }
                _ => {
                    let dom = sc
                        .curve
                        .as_ref()
                        .and_then(|c| c.dominating.clone())
                        .ok_or_else(|| Error::scenario("curve", "dominating", "missing key"))?;
                    curve_checks(&input, &value.negative_part, &value.volume, checks, &mut trail)?;
                    let dv = dominance_bound(&input, &dom)?;
                    value_line(&format!("value for dominating class {dom}"), &dv, &checks.dominating_value, &mut trail);
                    let (_, dchart) = volume_term(&input.with_z(dom.clone())?)?;
                    chart_checks(&dchart, checks, &mut trail);
                    (s_curve_bound(&input, &dom)?, dchart)
                }
            };
            bound_check(&computed, checks, &mut trail);
            Ok(Evaluation {
                computed: Computed::Value(computed),
                trail,
                chart: Some(chart),
            })
        }
        Kind::SDivisor => {
            let m = model(sc)?;
            let sched = schedule(sc)?;
            common_checks(m, Some(sched), checks, &mut trail)?;
            let v = s_divisor(m, sched)?;
            bound_check(&v, checks, &mut trail);
            Ok(Evaluation {
                computed: Computed::Value(v),
                trail,
                chart: None,
            })
        }
        Kind::EffDec | Kind::Infeasible => {
            let m = model(sc)?;
            common_checks(m, None, checks, &mut trail)?;
            let q = sc.cone.as_ref().ok_or_else(|| Error::scenario("cone", "", "missing section"))?;
            let cone = cone_spec(q)?;
            trail.push(line("cone generators", true, q.generators.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(", ")));
            if sc.kind == Kind::EffDec {
                let d = class_at(q, sc, None)?;
                let computed = match effective_decompose(&d, &cone)? {
                    EffResult::Feasible(dec) => {
                        let back = dec.recombine(&cone);
                        trail.push(line("recombination", back == d, back.to_string()));
                        Computed::Vector(dec.coeffs)
                    }
                    EffResult::Infeasible { witness } => {
                        trail.push(line("separating functional", true, format!("({})", join(&witness))));
                        Computed::Sweep(vec![(None, false)])
                    }
                };
                return Ok(Evaluation {
                    computed,
                    trail,
                    chart: None,
                });
            }
            let samples: Vec<Option<Rational>> = if q.grid.is_empty() {
                vec![None]
            } else {
                q.grid.iter().cloned().map(Some).collect()
            };
            let mut sweep = vec![];
            for a in samples {
                let d = class_at(q, sc, a.as_ref())?;
                let r = effective_decompose(&d, &cone)?;
                let label = match (&a, &q.param) {
                    (Some(a), Some(p)) => format!("{p} = {a}: {d}"),
                    _ => d.to_string(),
                };
                let detail = match &r {
                    EffResult::Feasible(dec) => format!("feasible ({})", join(&dec.coeffs)),
                    EffResult::Infeasible { witness } => format!("infeasible, witness ({})", join(witness)),
                };
                trail.push(line(label, !r.is_feasible(), detail));
                sweep.push((a, r.is_feasible()));
            }
            Ok(Evaluation {
                computed: Computed::Sweep(sweep),
                trail,
                chart: None,
            })
        }
        Kind::Pairing => {
            let m = model(sc)?;
            common_checks(m, None, checks, &mut trail)?;
            let q = sc.pairing.as_ref().ok_or_else(|| Error::scenario("pairing", "", "missing section"))?;
            let v = q.curve.pair(&q.class)?;
            for (d, c, b) in &q.contradicts {
                let w = q.curve.pair(d)?;
                let violated = !c.holds(&w, b);
                trail.push(line(
                    format!("({d}).Z {} {b} is contradicted", c.symbol()),
                    violated,
                    format!("({d}).Z = {w}"),
                ));
            }
            bound_check(&v, checks, &mut trail);
            Ok(Evaluation {
                computed: Computed::Value(v),
                trail,
                chart: None,
            })
        }
        Kind::Geo => {
            let g = sc.geo.as_ref().ok_or_else(|| Error::scenario("geo", "", "missing section"))?;
            let (summary, trail) = super::geo::run(&g.check, &g.data)?;
            Ok(Evaluation {
                computed: Computed::Check(summary),
                trail,
                chart: None,
            })
        }
    }
}

fn entry_for(file: &str, text: &str) -> Entry {
    let start = Instant::now();
    let sc = match parse_scenario(text) {
        Ok(sc) => sc,
        Err(e) => {
            return Entry {
                file: file.to_string(),
                name: String::new(),
                kind: String::new(),
                status: Status::ParseError,
                computed: None,
                expected: None,
                error: Some(e.to_string()),
                trail: vec![],
                chart: vec![],
                millis: start.elapsed().as_millis(),
            }
        }
    };
    let mut entry = Entry {
        file: file.to_string(),
        name: sc.name.clone(),
        kind: sc.kind.to_string(),
        status: Status::Error,
        computed: None,
        expected: Some(sc.expected.to_string()),
        error: None,
        trail: vec![],
        chart: vec![],
        millis: 0,
    };
    match evaluate(&sc) {
        Ok(ev) => {
            let pass = ev.matches(&sc.expected) && ev.checks_pass();
            entry.status = if pass { Status::Pass } else { Status::Fail };
            entry.computed = Some(ev.computed.to_string());
            entry.trail = ev.trail.iter().map(|t| t.to_string()).collect();
            if let Some(c) = &ev.chart {
                entry.chart = c.chambers.iter().map(|ch| ch.to_string()).collect();
            }
        }
        Err(e) => entry.error = Some(e.to_string()),
    }
    entry.millis = start.elapsed().as_millis();
    entry
}

/// Parses and evaluates every `(file name, contents)` pair. Failures stay with their entry.
pub fn run_verify(inputs: &[(String, String)]) -> Report {
    std::thread::scope(|s| {
        let handles: Vec<_> = inputs
            .iter()
            .map(|(file, text)| s.spawn(move || entry_for(file, text)))
            .collect();
        Report {
            entries: handles
                .into_iter()
                .zip(inputs)
                .map(|(h, (file, _))| h.join().unwrap_or_else(|_| Entry::crashed(file)))
                .collect(),
        }
    })
}
