//! Scenario files: a threefold, a surface in it, a schedule and a query,
//! evaluated in batch against an expected value.

mod format;
pub mod geo;
mod report;
mod run;

use std::fmt;

use crate::lattice::{CurvePairing, DivisorClass, SurfaceModel, ThreefoldModel};
use crate::projgeo::MPoly;
use crate::ratmath::{Poly1, Poly2, Rational};
use crate::sinv::Schedule;

pub use format::parse_scenario;
pub use report::{Entry, Report, Status};
pub use run::{curve_input, evaluate, run_verify, Computed, Evaluation, TrailLine};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    SCurve,
    NegativePart,
    SCurveBound,
    SDivisor,
    EffDec,
    Infeasible,
    Pairing,
    Geo,
}

impl Kind {
    pub const ALL: [Kind; 8] = [
        Kind::SCurve,
        Kind::NegativePart,
        Kind::SCurveBound,
        Kind::SDivisor,
        Kind::EffDec,
        Kind::Infeasible,
        Kind::Pairing,
        Kind::Geo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::SCurve => "s-curve",
            Kind::NegativePart => "negative-part",
            Kind::SCurveBound => "s-curve-bound",
            Kind::SDivisor => "s-divisor",
            Kind::EffDec => "effdec",
            Kind::Infeasible => "infeasible",
            Kind::Pairing => "pairing",
            Kind::Geo => "geo",
        }
    }

    /// Sections a scenario of this kind must have.
    pub fn required_sections(self) -> &'static [&'static str] {
        match self {
            Kind::SCurve | Kind::NegativePart | Kind::SCurveBound => &["threefold", "surface", "schedule", "curve"],
            Kind::SDivisor => &["threefold", "schedule"],
            Kind::EffDec | Kind::Infeasible => &["threefold", "cone"],
            Kind::Pairing => &["threefold", "pairing"],
            Kind::Geo => &["geo"],
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Lt,
    Le,
    Ge,
    Gt,
}

impl Cmp {
    pub fn holds(self, a: &Rational, b: &Rational) -> bool {
        match self {
            Cmp::Eq => a == b,
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Ge => a >= b,
            Cmp::Gt => a > b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Cmp::Eq => "=",
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expected {
    Value(Cmp, Rational),
    /// One coefficient per cone generator.
    Vector(Vec<Rational>),
    Infeasible,
    Holds,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Value(Cmp::Eq, q) => write!(f, "{q}"),
            Expected::Value(c, q) => write!(f, "{} {q}", c.symbol()),
            Expected::Vector(v) => write!(f, "({})", join(v)),
            Expected::Infeasible => f.write_str("infeasible"),
            Expected::Holds => f.write_str("holds"),
        }
    }
}

pub(crate) fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Clone, Debug)]
pub struct CurveSpec {
    pub z: DivisorClass<Rational>,
    /// Declared multiplicity of `z` in `N(u)|_Y`, one per schedule chamber.
    pub ord: Option<Vec<Poly1<Rational>>>,
    pub dominating: Option<DivisorClass<Rational>>,
}

/// Membership of a class, possibly depending on one parameter, in a cone.
#[derive(Clone, Debug)]
pub struct ConeQuery {
    pub class_text: String,
    /// Per-generator coefficients of the class, polynomial in `param`.
    pub class: Vec<MPoly>,
    pub param: Option<String>,
    /// Parameter values to test; empty when there is no parameter.
    pub grid: Vec<Rational>,
    pub generators: Vec<(String, DivisorClass<Rational>)>,
}

#[derive(Clone, Debug)]
pub struct PairingQuery {
    pub class: DivisorClass<Rational>,
    pub curve: CurvePairing,
    /// Bounds the pairing table is expected to violate, as `(class, cmp, value)`.
    pub contradicts: Vec<(DivisorClass<Rational>, Cmp, Rational)>,
}

#[derive(Clone, Debug)]
pub struct GeoQuery {
    pub check: String,
    pub data: toml::Table,
}

/// Extra assertions recorded in the verification trail.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    pub degree: Option<Rational>,
    pub tau: Option<Rational>,
    pub chambers: Option<usize>,
    pub u_breaks: Option<Vec<Rational>>,
    pub v_bounds: Option<Vec<Poly1<Rational>>>,
    pub integrands: Option<Vec<Poly2<Rational>>>,
    pub negative_integrands: Option<Vec<Poly1<Rational>>>,
    pub negative_part: Option<Rational>,
    pub volume: Option<Rational>,
    pub dominating_value: Option<Rational>,
    pub bound: Option<(Cmp, Rational)>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub kind: Kind,
    pub expected: Expected,
    pub model: Option<ThreefoldModel>,
    /// Named threefold classes usable in schedules.
    pub classes: Vec<(String, DivisorClass<Rational>)>,
    pub surface: Option<SurfaceModel>,
    pub schedule: Option<Schedule>,
    pub curve: Option<CurveSpec>,
    pub cone: Option<ConeQuery>,
    pub pairing: Option<PairingQuery>,
    pub geo: Option<GeoQuery>,
    pub checks: Checks,
}
