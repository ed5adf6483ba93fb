//! Reading scenario files.
//!
//! Files are sectioned `key = value` text (TOML syntax). Every number is a
//! quoted string so rationals stay exact: `"3/2"`, never `1.5`.
//!
//! ```text
//! [scenario]   name, kind, expected
//! [threefold]  basis, tensor = ["H H H: 1", ...], anticanonical, classes, effective
//! [threefold.mori]  lL = { H = "0", EC = "0", EL = "-1" }   ("?" marks an unknown entry)
//! [surface]    name, class, basis, pairing = ["l l: 1"], restriction = ["H: l"], curves = ["L12: l - E1 - E2"]
//! [schedule]   divisor; [[schedule.chamber]] u = "1 .. 3/2", negative = ["R: u - 1"]
//! [curve]      z, ord = ["0", "u - 1"], dominating
//! [cone]       class, parameter, generators, [cone.grid] from/step/count
//! [pairing]    class, curve = { H = "3", ... }, contradicts = ["H <= 1"]
//! [geo]        check, plus check-specific data
//! [checks]     tau, chambers, u_breaks, v_bounds, integrands, ...
//! ```

use std::sync::Arc;

use num_traits::Zero;
use toml::{Table, Value};

use super::{Checks, Cmp, ConeQuery, CurveSpec, Expected, GeoQuery, Kind, PairingQuery, Scenario};
use crate::error::{Error, Result};
use crate::lattice::{CurvePairing, DivisorClass, LatticeBasis, RestrictionMap, SurfaceForm, SurfaceModel, ThreefoldForm, ThreefoldModel};
use crate::parse::{parse_divisor_with, parse_int, parse_poly2, parse_poly_u, parse_rational_class, parse_rational_expr};
use crate::ratmath::{Poly1, Rational};
use crate::sinv::{Schedule, ScheduleChamber};

pub(crate) struct Sec<'a> {
    pub name: String,
    pub table: &'a Table,
}

impl<'a> Sec<'a> {
    pub fn new(name: impl Into<String>, table: &'a Table) -> Self {
        Sec {
            name: name.into(),
            table,
        }
    }

    pub fn err(&self, key: &str, msg: impl Into<String>) -> Error {
        Error::scenario(&self.name, key, msg)
    }

    /// Wraps an error from a value parser with this key's location.
    pub fn at<T>(&self, key: &str, r: Result<T>) -> Result<T> {
        r.map_err(|e| self.err(key, e.to_string()))
    }

    pub fn opt_str(&self, key: &str) -> Result<Option<&'a str>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.as_str())),
            Some(other) => Err(self.err(key, format!("expected a quoted string, found {}", other.type_str()))),
        }
    }

    pub fn str(&self, key: &str) -> Result<&'a str> {
        self.opt_str(key)?.ok_or_else(|| self.err(key, "missing key"))
    }

    pub fn opt_list(&self, key: &str) -> Result<Option<Vec<&'a str>>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Array(items)) => items
                .iter()
                .map(|v| match v {
                    Value::String(s) => Ok(s.as_str()),
                    other => Err(self.err(key, format!("list items must be quoted strings, found {}", other.type_str()))),
                })
                .collect::<Result<Vec<_>>>()
                .map(Some),
            Some(other) => Err(self.err(key, format!("expected a list, found {}", other.type_str()))),
        }
    }

    pub fn list(&self, key: &str) -> Result<Vec<&'a str>> {
        self.opt_list(key)?.ok_or_else(|| self.err(key, "missing key"))
    }

    pub fn opt_table(&self, key: &str) -> Result<Option<Sec<'a>>> {
        match self.table.get(key) {
            None => Ok(None),
            Some(Value::Table(t)) => Ok(Some(Sec::new(format!("{}.{key}", self.name), t))),
            Some(other) => Err(self.err(key, format!("expected a table, found {}", other.type_str()))),
        }
    }

    pub fn rational(&self, key: &str) -> Result<Option<Rational>> {
        self.opt_str(key)?
            .map(|s| self.at(key, parse_rational_expr(s)))
            .transpose()
    }

    /// Rejects keys outside `allowed`, which catches typos early.
    pub fn only(&self, allowed: &[&str]) -> Result<()> {
        for k in self.table.keys() {
            if !allowed.contains(&k.as_str()) {
                return Err(self.err(k, format!("unknown key (expected one of {})", allowed.join(", "))));
            }
        }
        Ok(())
    }
}

/// `"name: text"` into its two halves.
pub(crate) fn named<'a>(sec: &Sec, key: &str, entry: &'a str) -> Result<(&'a str, &'a str)> {
    let (n, rest) = entry
        .split_once(':')
        .ok_or_else(|| sec.err(key, format!("expected `name: value`, found `{entry}`")))?;
    let n = n.trim();
    if n.is_empty() {
        return Err(sec.err(key, format!("empty name in `{entry}`")));
    }
    Ok((n, rest.trim()))
}

fn basis(sec: &Sec, key: &str) -> Result<Arc<LatticeBasis>> {
    let names = sec.list(key)?;
    sec.at(key, LatticeBasis::new(&names))
}

fn class(sec: &Sec, key: &str, text: &str, b: &Arc<LatticeBasis>) -> Result<DivisorClass<Rational>> {
    sec.at(key, parse_rational_class(text, b))
}

/// `[lo, hi]` from `"lo .. hi"`.
fn interval(sec: &Sec, key: &str, text: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| sec.err(key, format!("expected `lo .. hi`, found `{text}`")))?;
    let lo = sec.at(key, parse_rational_expr(lo.trim()))?;
    let hi = sec.at(key, parse_rational_expr(hi.trim()))?;
    if hi <= lo {
        return Err(sec.err(key, format!("empty interval `{text}`")));
    }
    Ok((lo, hi))
}

pub(crate) fn comparison(text: &str) -> Option<(Cmp, &str)> {
    let t = text.trim_start();
    for (sym, c) in [("<=", Cmp::Le), (">=", Cmp::Ge), ("<", Cmp::Lt), (">", Cmp::Gt), ("=", Cmp::Eq)] {
        if let Some(rest) = t.strip_prefix(sym) {
            return Some((c, rest.trim()));
        }
    }
    None
}

fn bound(sec: &Sec, key: &str, text: &str) -> Result<(Cmp, Rational)> {
    let (c, rest) = comparison(text).unwrap_or((Cmp::Eq, text));
    Ok((c, sec.at(key, parse_rational_expr(rest))?))
}

fn expected(sec: &Sec) -> Result<Expected> {
    match sec.table.get("expected") {
        None => Err(sec.err("expected", "missing key")),
        Some(Value::Array(_)) => {
            let items = sec.list("expected")?;
            items
                .iter()
                .map(|s| sec.at("expected", parse_rational_expr(s)))
                .collect::<Result<Vec<_>>>()
                .map(Expected::Vector)
        }
        Some(_) => {
            let text = sec.str("expected")?.trim();
            Ok(match text {
                "infeasible" => Expected::Infeasible,
                "holds" => Expected::Holds,
                _ => {
                    let (c, q) = bound(sec, "expected", text)?;
                    Expected::Value(c, q)
                }
            })
        }
    }
}

fn kind(sec: &Sec) -> Result<Kind> {
    let text = sec.str("kind")?;
    Kind::ALL.into_iter().find(|k| k.name() == text).ok_or_else(|| {
        let names: Vec<&str> = Kind::ALL.iter().map(|k| k.name()).collect();
        sec.err("kind", format!("unknown kind `{text}` (expected one of {})", names.join(", ")))
    })
}

struct Threefold {
    model: ThreefoldModel,
    classes: Vec<(String, DivisorClass<Rational>)>,
}

fn threefold(sec: &Sec) -> Result<Threefold> {
    sec.only(&["basis", "tensor", "anticanonical", "classes", "effective", "mori"])?;
    let b = basis(sec, "basis")?;
    let mut entries = vec![];
    for e in sec.list("tensor")? {
        let (names, value) = named(sec, "tensor", e)?;
        let names: Vec<&str> = names.split_whitespace().collect();
        if names.len() != 3 {
            return Err(sec.err("tensor", format!("`{e}` must name three generators")));
        }
        let v = sec.at("tensor", parse_rational_expr(value))?;
        entries.push((names[0], names[1], names[2], v));
    }
    let form = sec.at("tensor", ThreefoldForm::new(&b, &entries))?;
    let anticanonical = class(sec, "anticanonical", sec.str("anticanonical")?, &b)?;

    let mut classes: Vec<(String, DivisorClass<Rational>)> = vec![];
    for e in sec.opt_list("classes")?.unwrap_or_default() {
        let (n, text) = named(sec, "classes", e)?;
        if classes.iter().any(|(m, _)| m == n) {
            return Err(sec.err("classes", format!("class `{n}` defined twice")));
        }
        classes.push((n.to_string(), class(sec, "classes", text, &b)?));
    }
    let effective = generators(sec, "effective", &b, &classes)?;

    let mut mori = vec![];
    let table = sec.opt_table("mori")?.ok_or_else(|| sec.err("mori", "missing table [threefold.mori]"))?;
    for (name, v) in table.table {
        let Value::Table(t) = v else {
            return Err(table.err(name, "expected an inline table of pairings"));
        };
        mori.push(curve_pairing(&Sec::new(format!("{}.{name}", table.name), t), name, &b)?);
    }
    if mori.is_empty() {
        return Err(sec.err("mori", "no curves"));
    }
    Ok(Threefold {
        model: ThreefoldModel {
            form,
            anticanonical,
            mori,
            effective,
        },
        classes,
    })
}

fn curve_pairing(sec: &Sec, name: &str, b: &Arc<LatticeBasis>) -> Result<CurvePairing> {
    let mut table = vec![];
    for (g, _) in sec.table {
        let text = sec.str(g)?.trim();
        let v = if text == "?" {
            None
        } else {
            Some(sec.at(g, parse_rational_expr(text))?)
        };
        table.push((g.as_str(), v));
    }
    sec.at("", CurvePairing::new(name, b, &table))
}

/// Generator entries are `name: expr`, a bare class name from `classes`, or a bare expression.
fn generators(
    sec: &Sec,
    key: &str,
    b: &Arc<LatticeBasis>,
    classes: &[(String, DivisorClass<Rational>)],
) -> Result<Vec<(String, DivisorClass<Rational>)>> {
    let mut out: Vec<(String, DivisorClass<Rational>)> = vec![];
    for e in sec.list(key)? {
        let (n, c) = if e.contains(':') {
            let (n, text) = named(sec, key, e)?;
            (n.to_string(), class(sec, key, text, b)?)
        } else if let Some((n, c)) = classes.iter().find(|(n, _)| n == e.trim()) {
            (n.clone(), c.clone())
        } else {
            (e.trim().to_string(), class(sec, key, e, b)?)
        };
        if out.iter().any(|(m, _)| *m == n) {
            return Err(sec.err(key, format!("generator `{n}` listed twice")));
        }
        out.push((n, c));
    }
    if out.is_empty() {
        return Err(sec.err(key, "no generators"));
    }
    Ok(out)
}

fn surface(sec: &Sec, x: &Arc<LatticeBasis>) -> Result<SurfaceModel> {
    sec.only(&["name", "class", "basis", "pairing", "restriction", "curves"])?;
    let name = sec.str("name")?.to_string();
    let cls = class(sec, "class", sec.str("class")?, x)?;
    let b = basis(sec, "basis")?;
    let mut pairs = vec![];
    for e in sec.list("pairing")? {
        let (names, value) = named(sec, "pairing", e)?;
        let names: Vec<&str> = names.split_whitespace().collect();
        if names.len() != 2 {
            return Err(sec.err("pairing", format!("`{e}` must name two generators")));
        }
        pairs.push((names[0], names[1], sec.at("pairing", parse_rational_expr(value))?));
    }
    let form = sec.at("pairing", SurfaceForm::new(&b, &pairs))?;
    let mut images = vec![];
    for e in sec.list("restriction")? {
        let (g, text) = named(sec, "restriction", e)?;
        images.push((g, class(sec, "restriction", text, &b)?));
    }
    let restriction = sec.at("restriction", RestrictionMap::new(x, &b, &images))?;
    let mut curves: Vec<(String, DivisorClass<Rational>)> = vec![];
    for e in sec.list("curves")? {
        let (n, text) = named(sec, "curves", e)?;
        if curves.iter().any(|(m, _)| m == n) {
            return Err(sec.err("curves", format!("curve `{n}` listed twice")));
        }
        curves.push((n.to_string(), class(sec, "curves", text, &b)?));
    }
    if curves.is_empty() {
        return Err(sec.err("curves", "no curves"));
    }
    Ok(SurfaceModel {
        name,
        class: cls,
        form,
        restriction,
        curves,
    })
}

fn schedule(sec: &Sec, tf: &Threefold) -> Result<Schedule> {
    sec.only(&["divisor", "chamber"])?;
    let b = tf.model.basis();
    let divisor = class(sec, "divisor", sec.str("divisor")?, b)?;
    let Some(Value::Array(items)) = sec.table.get("chamber") else {
        return Err(sec.err("chamber", "missing [[schedule.chamber]] entries"));
    };
    let mut chambers = vec![];
    let mut next = Rational::zero();
    for (i, item) in items.iter().enumerate() {
        let Value::Table(t) = item else {
            return Err(sec.err("chamber", "each chamber must be a table"));
        };
        let ch = Sec::new(format!("schedule.chamber {}", i + 1), t);
        ch.only(&["u", "negative"])?;
        let (u_lo, u_hi) = interval(&ch, "u", ch.str("u")?)?;
        if u_lo != next {
            return Err(ch.err("u", format!("chambers must be contiguous from 0: expected start {next}, found {u_lo}")));
        }
        next = u_hi.clone();
        let mut negative = vec![];
        for e in ch.opt_list("negative")?.unwrap_or_default() {
            let (n, coeff) = named(&ch, "negative", e)?;
            let d = tf
                .classes
                .iter()
                .chain(&tf.model.effective)
                .find(|(m, _)| m == n)
                .map(|(_, c)| c.clone())
                .or_else(|| DivisorClass::generator(b, n).ok())
                .ok_or_else(|| ch.err("negative", format!("unknown class `{n}`")))?;
            negative.push((n.to_string(), d, ch.at("negative", parse_poly_u(coeff))?));
        }
        chambers.push(ScheduleChamber { u_lo, u_hi, negative });
    }
    if chambers.is_empty() {
        return Err(sec.err("chamber", "no chambers"));
    }
    Ok(Schedule { divisor, chambers })
}

fn curve(sec: &Sec, surf: &SurfaceModel, sched: &Schedule) -> Result<CurveSpec> {
    sec.only(&["z", "ord", "dominating"])?;
    let b = surf.basis();
    let z = class(sec, "z", sec.str("z")?, b)?;
    let ord = match sec.opt_list("ord")? {
        None => None,
        Some(items) => {
            if items.len() != sched.chambers.len() {
                return Err(sec.err(
                    "ord",
                    format!("{} entries for {} schedule chambers", items.len(), sched.chambers.len()),
                ));
            }
            Some(
                items
                    .iter()
                    .map(|s| sec.at("ord", parse_poly_u(s)))
                    .collect::<Result<Vec<Poly1<Rational>>>>()?,
            )
        }
    };
    let dominating = sec.opt_str("dominating")?.map(|t| class(sec, "dominating", t, b)).transpose()?;
    Ok(CurveSpec { z, ord, dominating })
}

fn cone(sec: &Sec, tf: &Threefold) -> Result<ConeQuery> {
    sec.only(&["class", "parameter", "generators", "grid"])?;
    let b = tf.model.basis();
    let class_text = sec.str("class")?.to_string();
    let param = sec.opt_str("parameter")?.map(str::to_string);
    let vars: Vec<&str> = param.iter().map(String::as_str).collect();
    let coeffs = sec.at("class", parse_divisor_with(&class_text, b, &vars))?;
    let generators = if sec.table.contains_key("generators") {
        generators(sec, "generators", b, &tf.classes)?
    } else {
        tf.model.effective.clone()
    };
    let grid = match (&param, sec.opt_table("grid")?) {
        (None, None) => vec![],
        (None, Some(_)) => return Err(sec.err("grid", "a grid needs a parameter")),
        (Some(_), None) => return Err(sec.err("grid", "a parameter needs a grid")),
        (Some(_), Some(g)) => {
            g.only(&["from", "step", "count"])?;
            let from = g.rational("from")?.ok_or_else(|| g.err("from", "missing key"))?;
            let step = g.rational("step")?.ok_or_else(|| g.err("step", "missing key"))?;
            let count = g.at("count", parse_int(g.str("count")?))?;
            let count: usize = count.try_into().map_err(|_| g.err("count", "count out of range"))?;
            if count == 0 || step <= Rational::zero() {
                return Err(g.err("step", "need a positive step and count"));
            }
            // strictly above `from`: from + k*step, k = 1..count
            (1..=count).map(|k| &from + &step * Rational::from_integer(k.into())).collect()
        }
    };
    Ok(ConeQuery {
        class_text,
        class: coeffs,
        param,
        grid,
        generators,
    })
}

fn pairing(sec: &Sec, tf: &Threefold) -> Result<PairingQuery> {
    sec.only(&["class", "curve", "contradicts"])?;
    let b = tf.model.basis();
    let cls = class(sec, "class", sec.str("class")?, b)?;
    let table = sec.opt_table("curve")?.ok_or_else(|| sec.err("curve", "missing inline table"))?;
    let curve = curve_pairing(&table, "Z", b)?;
    let mut contradicts = vec![];
    for e in sec.opt_list("contradicts")?.unwrap_or_default() {
        let pos = e
            .find(['<', '>', '='])
            .ok_or_else(|| sec.err("contradicts", format!("expected `class <= value`, found `{e}`")))?;
        let (lhs, rhs) = e.split_at(pos);
        let (c, q) = bound(sec, "contradicts", rhs)?;
        contradicts.push((class(sec, "contradicts", lhs.trim(), b)?, c, q));
    }
    Ok(PairingQuery {
        class: cls,
        curve,
        contradicts,
    })
}

fn checks(sec: &Sec) -> Result<Checks> {
    sec.only(&[
        "degree",
        "tau",
        "chambers",
        "u_breaks",
        "v_bounds",
        "integrands",
        "negative_integrands",
        "negative_part",
        "volume",
        "dominating_value",
        "bound",
    ])?;
    let list = |key: &str| sec.opt_list(key);
    Ok(Checks {
        degree: sec.rational("degree")?,
        tau: sec.rational("tau")?,
        chambers: sec
            .opt_str("chambers")?
            .map(|s| {
                let n = sec.at("chambers", parse_int(s))?;
                n.try_into().map_err(|_| sec.err("chambers", "out of range"))
            })
            .transpose()?,
        u_breaks: list("u_breaks")?
            .map(|v| v.iter().map(|s| sec.at("u_breaks", parse_rational_expr(s))).collect())
            .transpose()?,
        v_bounds: list("v_bounds")?
            .map(|v| v.iter().map(|s| sec.at("v_bounds", parse_poly_u(s))).collect())
            .transpose()?,
        integrands: list("integrands")?
            .map(|v| v.iter().map(|s| sec.at("integrands", parse_poly2(s))).collect())
            .transpose()?,
        negative_integrands: list("negative_integrands")?
            .map(|v| v.iter().map(|s| sec.at("negative_integrands", parse_poly_u(s))).collect())
            .transpose()?,
        negative_part: sec.rational("negative_part")?,
        volume: sec.rational("volume")?,
        dominating_value: sec.rational("dominating_value")?,
        bound: sec.opt_str("bound")?.map(|s| bound(sec, "bound", s)).transpose()?,
    })
}

/// Parses and validates a scenario. Errors name the section and key.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let root: Table = text
        .parse()
        .map_err(|e: toml::de::Error| Error::scenario("", "", e.message().to_string()))?;
    let top = Sec::new("", &root);
    top.only(&["scenario", "threefold", "surface", "schedule", "curve", "cone", "pairing", "geo", "checks"])?;
    let section = |name: &str| -> Result<Option<Sec>> { top.opt_table(name).map(|o| o.map(|s| Sec::new(name, s.table))) };

    let head = section("scenario")?.ok_or_else(|| Error::scenario("scenario", "", "missing [scenario] section"))?;
    head.only(&["name", "kind", "expected"])?;
    let name = head.str("name")?.to_string();
    let kind = kind(&head)?;
    let expected = expected(&head)?;
    for req in kind.required_sections() {
        if !root.contains_key(*req) {
            return Err(Error::scenario(req, "", format!("missing [{req}] section required by kind `{kind}`")));
        }
    }

    let tf = section("threefold")?.map(|s| threefold(&s)).transpose()?;
    let need_tf = |what: &str| {
        tf.as_ref()
            .ok_or_else(|| Error::scenario(what, "", "needs a [threefold] section"))
    };
    let surface = match section("surface")? {
        Some(s) => Some(surface(&s, need_tf("surface")?.model.basis())?),
        None => None,
    };
    let schedule = match section("schedule")? {
        Some(s) => Some(schedule(&s, need_tf("schedule")?)?),
        None => None,
    };
    let curve = match section("curve")? {
        Some(s) => {
            let surf = surface
                .as_ref()
                .ok_or_else(|| Error::scenario("curve", "", "needs a [surface] section"))?;
            let sched = schedule
                .as_ref()
                .ok_or_else(|| Error::scenario("curve", "", "needs a [schedule] section"))?;
            Some(curve(&s, surf, sched)?)
        }
        None => None,
    };
    if kind == Kind::SCurveBound && curve.as_ref().is_some_and(|c| c.dominating.is_none()) {
        return Err(Error::scenario("curve", "dominating", "kind `s-curve-bound` needs a dominating class"));
    }
    if let (Some(sched), Some(surf)) = (&schedule, &surface) {
        if sched.divisor != surf.class {
            return Err(Error::scenario(
                "schedule",
                "divisor",
                format!("schedule divisor {} differs from the surface class {}", sched.divisor, surf.class),
            ));
        }
    }
    let cone = match section("cone")? {
        Some(s) => Some(cone(&s, need_tf("cone")?)?),
        None => None,
    };
    if kind == Kind::EffDec && cone.as_ref().is_some_and(|c| c.param.is_some()) {
        return Err(Error::scenario("cone", "parameter", "kind `effdec` takes a constant class"));
    }
    let pairing = match section("pairing")? {
        Some(s) => Some(pairing(&s, need_tf("pairing")?)?),
        None => None,
    };
    let geo = match section("geo")? {
        Some(s) => {
            let check = s.str("check")?.to_string();
            super::geo::validate(&check, &s)?;
            Some(GeoQuery {
                check,
                data: s.table.clone(),
            })
        }
        None => None,
    };
    let checks = match section("checks")? {
        Some(s) => checks(&s)?,
        None => Checks::default(),
    };
    check_expected_shape(kind, &expected, cone.as_ref())?;

    let (model, classes) = match tf {
        Some(t) => (Some(t.model), t.classes),
        None => (None, vec![]),
    };
    Ok(Scenario {
        name,
        kind,
        expected,
        model,
        classes,
        surface,
        schedule,
        curve,
        cone,
        pairing,
        geo,
        checks,
    })
}

fn check_expected_shape(kind: Kind, expected: &Expected, cone: Option<&ConeQuery>) -> Result<()> {
    let ok = match (kind, expected) {
        (Kind::EffDec, Expected::Vector(v)) => cone.is_none_or(|c| v.len() == c.generators.len()),
        (Kind::EffDec, Expected::Infeasible) => true,
        (Kind::Infeasible, Expected::Infeasible) => true,
        (Kind::Geo, Expected::Holds) => true,
        (Kind::SCurve | Kind::NegativePart | Kind::SCurveBound | Kind::SDivisor | Kind::Pairing, Expected::Value(..)) => true,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::scenario(
            "scenario",
            "expected",
            format!("`{expected}` is not a valid expectation for kind `{kind}`"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PLANE: &str = include_str!("../../scenarios/plane_section_line.toml");

    fn message(text: &str) -> String {
        parse_scenario(text).map(|_| ()).unwrap_err().to_string()
    }

    #[test]
    fn bundled_plane_scenario_parses() {
        let sc = parse_scenario(PLANE).unwrap();
        assert_eq!(sc.kind, Kind::SCurve);
        assert_eq!(sc.expected, Expected::Value(Cmp::Eq, Rational::new(753.into(), 1120.into())));
        assert_eq!(sc.schedule.unwrap().chambers.len(), 2);
    }

    #[test]
    fn missing_schedule_is_named() {
        let start = PLANE.find("[schedule]").unwrap();
        let end = PLANE.find("[curve]").unwrap();
        let text = format!("{}{}", &PLANE[..start], &PLANE[end..]);
        assert!(message(&text).contains("schedule"));
    }

    #[test]
    fn asymmetric_tensor_is_rejected() {
        let text = PLANE.replace(r#""H EC EC: -3","#, r#""H EC EC: -3", "EC H EC: -2","#);
        assert!(message(&text).contains("tensor symmetry violated"));
    }

    #[test]
    fn unknown_keys_and_generators_are_located() {
        let text = PLANE.replace(r#"z = "l""#, r#"z = "l + E9""#);
        assert!(message(&text).contains("[curve] z"));
        let text = PLANE.replace("[checks]", "[checks]\nvolumes = \"1\"");
        assert!(message(&text).contains("volumes"));
    }

    #[test]
    fn gap_in_schedule_is_rejected() {
        let text = PLANE.replace(r#"u = "1 .. 3/2""#, r#"u = "6/5 .. 3/2""#);
        assert!(message(&text).contains("schedule"));
    }

    #[test]
    fn floats_are_not_rationals() {
        let text = PLANE.replace(r#"expected = "753/1120""#, "expected = 0.67");
        assert!(parse_scenario(&text).is_err());
    }
}
