//! Named polynomial-geometry checks. Each reads its reference data from the
//! scenario's `[geo]` section and compares it with what the library computes.

use num_traits::Zero;
use toml::Table;

use super::format::{named, Sec};
use super::run::TrailLine;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::parse::{parse_mpoly, parse_rational_expr};
use crate::projgeo::points::{curve_point, eval_point, invariant_secants, same_projective_point, six_points};
use crate::projgeo::secant::verify_secant_lemma;
use crate::projgeo::{
    character, common_fixed_points, contains_param_curve, pi_r_quartic, solve_conic_through_line, LinearAction, MPoly,
    ParamCurve,
};
use crate::ratmath::{RatFunc, Rational};

pub const CHECKS: [&str; 6] = [
    "characters",
    "fixed-points",
    "conic-through-line",
    "secant-system",
    "six-points",
    "cubic-quadrics",
];

fn keys(check: &str) -> &'static [&'static str] {
    match check {
        "characters" => &["check", "group", "quadrics", "characters"],
        "fixed-points" => &["check", "group"],
        "conic-through-line" => &["check", "coefficients", "quartic"],
        "secant-system" => &["check", "quartic", "linear", "factors"],
        "six-points" => &["check", "cubic", "quadric", "secants"],
        "cubic-quadrics" => &["check", "cubic", "contains", "avoids"],
        _ => &[],
    }
}

/// Structural validation at parse time: known check, known keys, parseable data.
pub(crate) fn validate(check: &str, sec: &Sec) -> Result<()> {
    if !CHECKS.contains(&check) {
        return Err(sec.err("check", format!("unknown check `{check}` (expected one of {})", CHECKS.join(", "))));
    }
    sec.only(keys(check))?;
    Data::new(sec.name.clone(), sec.table).load(check).map(|_| ())
}

struct Data<'a> {
    sec: Sec<'a>,
}

enum Loaded {
    Characters {
        group: Vec<(String, LinearAction)>,
        quadrics: Vec<(String, MPoly)>,
        table: Vec<(String, Vec<Rational>)>,
    },
    FixedPoints {
        group: Vec<(String, LinearAction)>,
    },
    Conic {
        coefficients: Vec<MPoly>,
        quartic: MPoly,
    },
    Secant {
        quartic: MPoly,
        linear: MPoly,
        factors: Vec<MPoly>,
    },
    SixPoints {
        cubic: ParamCurve,
        quadric: MPoly,
        secants: Vec<(String, String)>,
    },
    CubicQuadrics {
        cubic: ParamCurve,
        contains: Vec<MPoly>,
        avoids: Vec<MPoly>,
    },
}

impl<'a> Data<'a> {
    fn new(name: String, table: &'a Table) -> Self {
        Data {
            sec: Sec::new(name, table),
        }
    }

    fn poly(&self, key: &str, text: &str) -> Result<MPoly> {
        self.sec.at(key, parse_mpoly(text))
    }

    fn polys(&self, key: &str) -> Result<Vec<MPoly>> {
        self.sec.list(key)?.iter().map(|t| self.poly(key, t)).collect()
    }

    fn named_polys(&self, key: &str) -> Result<Vec<(String, MPoly)>> {
        self.sec
            .list(key)?
            .iter()
            .map(|e| {
                let (n, t) = named(&self.sec, key, e)?;
                Ok((n.to_string(), self.poly(key, t)?))
            })
            .collect()
    }

    fn group(&self) -> Result<Vec<(String, LinearAction)>> {
        let g = self
            .sec
            .opt_table("group")?
            .ok_or_else(|| self.sec.err("group", "missing table of generator matrices"))?;
        let mut out = vec![];
        for name in g.table.keys() {
            let rows = g.list(name)?;
            let m: Matrix<Rational> = rows
                .iter()
                .map(|r| r.split_whitespace().map(|x| g.at(name, parse_rational_expr(x))).collect())
                .collect::<Result<_>>()?;
            out.push((name.clone(), g.at(name, LinearAction::new(m))?));
        }
        if out.len() != 2 {
            return Err(self.sec.err("group", "expected exactly two generators"));
        }
        Ok(out)
    }

    fn cubic(&self) -> Result<ParamCurve> {
        let comps = self.polys("cubic")?;
        let comps: [MPoly; 4] = comps
            .try_into()
            .map_err(|_| self.sec.err("cubic", "expected four components"))?;
        self.sec.at("cubic", ParamCurve::new(comps))
    }

    fn load(&self, check: &str) -> Result<Loaded> {
        Ok(match check {
            "characters" => {
                let table = self
                    .sec
                    .list("characters")?
                    .iter()
                    .map(|e| {
                        let (n, t) = named(&self.sec, "characters", e)?;
                        let vals = t
                            .split(',')
                            .map(|x| self.sec.at("characters", parse_rational_expr(x.trim())))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((n.to_string(), vals))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Loaded::Characters {
                    group: self.group()?,
                    quadrics: self.named_polys("quadrics")?,
                    table,
                }
            }
            "fixed-points" => Loaded::FixedPoints { group: self.group()? },
            "conic-through-line" => Loaded::Conic {
                coefficients: {
                    let c = self.polys("coefficients")?;
                    if c.len() != 6 {
                        return Err(self.sec.err("coefficients", "expected six coefficients"));
                    }
                    c
                },
                quartic: self.poly("quartic", self.sec.str("quartic")?)?,
            },
            "secant-system" => Loaded::Secant {
                quartic: self.poly("quartic", self.sec.str("quartic")?)?,
                linear: self.poly("linear", self.sec.str("linear")?)?,
                factors: self.polys("factors")?,
            },
            "six-points" => Loaded::SixPoints {
                cubic: self.cubic()?,
                quadric: self.poly("quadric", self.sec.str("quadric")?)?,
                secants: self
                    .sec
                    .list("secants")?
                    .iter()
                    .map(|e| {
                        let v: Vec<&str> = e.split_whitespace().collect();
                        match v[..] {
                            [a, b] => Ok((a.to_string(), b.to_string())),
                            _ => Err(self.sec.err("secants", format!("expected `P P`, found `{e}`"))),
                        }
                    })
                    .collect::<Result<_>>()?,
            },
            "cubic-quadrics" => Loaded::CubicQuadrics {
                cubic: self.cubic()?,
                contains: self.polys("contains")?,
                avoids: self.sec.opt_list("avoids")?.map_or(Ok(vec![]), |_| self.polys("avoids"))?,
            },
            _ => return Err(self.sec.err("check", format!("unknown check `{check}`"))),
        })
    }
}

fn line(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> TrailLine {
    TrailLine {
        label: label.into(),
        ok,
        detail: detail.into(),
    }
}

fn poly_to_ratfunc(p: &MPoly) -> Result<RatFunc> {
    Ok(RatFunc::poly(p.to_poly1("s")?))
}

/// Whether two vectors over `Q(s)` agree up to one common nonzero factor.
fn proportional_rf(a: &[RatFunc], b: &[RatFunc]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x.is_zero() == y.is_zero())
        && (0..a.len()).all(|i| (0..a.len()).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone()))
}

/// Runs a check; the summary is printed as the computed value.
pub fn run(check: &str, data: &Table) -> Result<(String, Vec<TrailLine>)> {
    let d = Data::new("geo".into(), data);
    let mut trail = vec![];
    match d.load(check)? {
        Loaded::Characters { group, quadrics, table } => {
            for (name, expected) in &table {
                let f = quadrics
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, f)| f)
                    .ok_or_else(|| Error::scenario("geo", "characters", format!("no quadric named `{name}`")))?;
                let got: Vec<Option<Rational>> = group.iter().map(|(_, g)| character(g, f)).collect();
                let shown: Vec<String> = got
                    .iter()
                    .map(|c| c.as_ref().map_or("not semi-invariant".into(), |c| c.to_string()))
                    .collect();
                let ok = got.iter().zip(expected).all(|(c, e)| c.as_ref() == Some(e)) && got.len() == expected.len();
                trail.push(line(format!("character of {name}"), ok, format!("({})", shown.join(", "))));
            }
        }
        Loaded::FixedPoints { group } => {
            let locus = common_fixed_points(&group[0].1, &group[1].1)?;
            let detail = format!(
                "{} points, {} positive-dimensional components{}",
                locus.points.len(),
                locus.positive_dimensional.len(),
                if locus.whole_space { ", whole space" } else { "" }
            );
            trail.push(line(format!("common fixed points of {} and {}", group[0].0, group[1].0), locus.is_empty(), detail));
        }
        Loaded::Conic { coefficients, quartic } => {
            let solved = solve_conic_through_line()?;
            let expected: Vec<RatFunc> = coefficients.iter().map(poly_to_ratfunc).collect::<Result<_>>()?;
            let shown: Vec<String> = solved.iter().map(|c| c.to_string()).collect();
            trail.push(line("solved conic coefficients a1..a6", proportional_rf(&solved, &expected), shown.join(", ")));
            let q = pi_r_quartic()?;
            let ok = q.proportional(&quartic).is_some();
            trail.push(line("pullback quartic", ok, q.to_string()));
        }
        Loaded::Secant { quartic, linear, factors } => {
            let cert = verify_secant_lemma()?;
            trail.push(line(
                "containment conditions span the two-equation system",
                true,
                format!("{} raw conditions", cert.conditions.len()),
            ));
            trail.push(line("quartic equation", cert.quartic.proportional(&quartic).is_some(), cert.quartic.to_string()));
            trail.push(line("linear equation", cert.linear.proportional(&linear).is_some(), cert.linear.to_string()));
            let product = factors.iter().fold(MPoly::constant(Rational::from_integer(1.into())), |acc, f| &acc * f);
            let shown: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
            trail.push(line(
                "factorization of the linear equation",
                product.proportional(&cert.linear).is_some(),
                shown.join("*"),
            ));
            trail.push(line("quartic on the branch t = 1/s", true, cert.branch_value.to_string()));
        }
        Loaded::SixPoints { cubic, quadric, secants } => {
            for (name, xy, p) in six_points() {
                let on_q = eval_point(&quadric, &p)?.is_zero();
                let on_c = same_projective_point(&curve_point(&cubic, &xy)?, &p);
                trail.push(line(format!("{name} on the quadric and the cubic"), on_q && on_c, format!("[{}]", super::join(&p))));
            }
            let got: Vec<(String, String)> = invariant_secants()
                .into_iter()
                .map(|(a, b, _)| (a.to_string(), b.to_string()))
                .collect();
            let shown: Vec<String> = got.iter().map(|(a, b)| format!("{a}{b}")).collect();
            trail.push(line("invariant secants", got == secants, shown.join(", ")));
        }
        Loaded::CubicQuadrics { cubic, contains, avoids } => {
            for f in &contains {
                trail.push(line(format!("cubic lies on {f}"), contains_param_curve(f, &cubic), "pull-back vanishes"));
            }
            for f in &avoids {
                let ok = !contains_param_curve(f, &cubic);
                trail.push(line(format!("cubic not on {f}"), ok, cubic.pull_back(f).to_string()));
            }
        }
    }
    let all = trail.iter().all(|t| t.ok);
    let summary = if all {
        "holds".to_string()
    } else {
        let bad: Vec<&str> = trail.iter().filter(|t| !t.ok).map(|t| t.label.as_str()).collect();
        format!("fails: {}", bad.join("; "))
    };
    Ok((summary, trail))
}
