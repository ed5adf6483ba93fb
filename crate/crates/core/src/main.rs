use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_traits::Signed;

use kstab::cones::{effective_decompose, ConeSpec, EffResult};
use kstab::parse::{parse_rational_class, parse_rational_expr};
use kstab::scenario::{self, evaluate, parse_scenario, run_verify, Entry, Report, Scenario, Status};
use kstab::sinv::s_divisor;
use kstab::zariski::zariski_decompose;
use kstab::{Error, Rational};

const BUNDLED_GEO: [(&str, &str, &str); 6] = [
    ("characters", "geo_characters.toml", include_str!("../scenarios/geo_characters.toml")),
    ("fixed-points", "geo_fixed_points.toml", include_str!("../scenarios/geo_fixed_points.toml")),
    (
        "conic-through-line",
        "geo_conic_through_line.toml",
        include_str!("../scenarios/geo_conic_through_line.toml"),
    ),
    ("secant-system", "geo_secant_system.toml", include_str!("../scenarios/geo_secant_system.toml")),
    ("six-points", "geo_six_points.toml", include_str!("../scenarios/geo_six_points.toml")),
    ("cubic-quadrics", "geo_cubic_quadrics.toml", include_str!("../scenarios/geo_cubic_quadrics.toml")),
];

#[derive(Parser)]
#[command(name = "kstab", version, about = "Exact S-invariant and Zariski chart verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate scenario files and compare each against its expected value.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Also write the full report, chamber charts included, to this path.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Curve invariant of a curve scenario, with its trail and chart.
    SCurve {
        file: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// S-invariant of the scenario's schedule divisor.
    SDivisor { file: PathBuf },
    /// Zariski decomposition of P(u)|Y - vZ at one point.
    Zariski {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Decompose a class over the scenario's cone generators.
    Effdec {
        file: PathBuf,
        #[arg(long)]
        class: String,
    },
    /// Run one bundled polynomial-geometry check.
    Geo {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(scenario::geo::CHECKS))]
        check: String,
        #[arg(long)]
        json: bool,
    },
}

/// A failure carrying its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(1, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Scenario, Fail> {
    let text = read(path)?;
    parse_scenario(&text).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn rational(flag: &str, text: &str) -> Result<Rational, Fail> {
    parse_rational_expr(text).map_err(|e| Fail(2, format!("--{flag}: {e}")))
}

fn write_report(path: &Path, text: &str) -> Result<(), Fail> {
    std::fs::write(path, text).map_err(|e| Fail(2, format!("{}: {e}", path.display())))
}

fn unreadable(path: &Path, err: std::io::Error) -> Entry {
    Entry {
        file: path.display().to_string(),
        name: String::new(),
        kind: String::new(),
        status: Status::ParseError,
        computed: None,
        expected: None,
        error: Some(format!("cannot read file: {err}")),
        trail: vec![],
        chart: vec![],
        millis: 0,
    }
}

fn emit(report: &Report, json: bool, path: Option<&Path>) -> Result<u8, Fail> {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.summary());
    }
    if let Some(p) = path {
        write_report(p, &report.full())?;
    }
    Ok(report.exit_code() as u8)
}

fn verify(files: &[PathBuf], json: bool, path: Option<&Path>) -> Result<u8, Fail> {
    let mut readable = vec![];
    let mut slots = vec![];
    for f in files {
        match std::fs::read_to_string(f) {
            Ok(text) => {
                slots.push(None);
                readable.push((f.display().to_string(), text));
            }
            Err(e) => slots.push(Some(unreadable(f, e))),
        }
    }
    let mut done = run_verify(&readable).entries.into_iter();
    let entries = slots
        .into_iter()
        .map(|s| s.unwrap_or_else(|| done.next().expect("one entry per readable file")))
        .collect();
    emit(&Report { entries }, json, path)
}

fn s_curve(path: &Path, report: Option<&Path>) -> Result<u8, Fail> {
    let sc = load(path)?;
    if sc.curve.is_none() {
        return Err(Fail(2, format!("{}: scenario has no [curve] section", path.display())));
    }
    let ev = evaluate(&sc)?;
    println!("{}: {}", sc.name, ev.computed);
    for t in &ev.trail {
        println!("    {t}");
    }
    if let Some(chart) = &ev.chart {
        let dump: String = chart.chambers.iter().map(|c| format!("{c}\n")).collect();
        match report {
            Some(p) => write_report(p, &dump)?,
            None => print!("{dump}"),
        }
    }
    Ok(0)
}

fn s_divisor_cmd(path: &Path) -> Result<u8, Fail> {
    let sc = load(path)?;
    let (Some(m), Some(sched)) = (&sc.model, &sc.schedule) else {
        return Err(Fail(2, format!("{}: needs [threefold] and [schedule]", path.display())));
    };
    let v = s_divisor(m, sched)?;
    println!("S({}) = {v}", sched.divisor);
    Ok(0)
}

fn zariski(path: &Path, u: &str, v: &str) -> Result<u8, Fail> {
    let sc = load(path)?;
    let (Some(m), Some(sched), Some(surface), Some(curve)) = (&sc.model, &sc.schedule, &sc.surface, &sc.curve) else {
        return Err(Fail(2, format!("{}: needs [threefold], [surface], [schedule] and [curve]", path.display())));
    };
    let u = rational("u", u)?;
    let v = rational("v", v)?;
    let Some(i) = sched.chambers.iter().position(|c| c.u_lo <= u && u <= c.u_hi) else {
        return Err(Fail(2, format!("u = {u} lies outside [0, {}]", sched.tau())));
    };
    if v.is_negative() {
        return Err(Fail(2, format!("v = {v} is negative")));
    }
    let p = surface.restriction.restrict(&sched.positive(m, i).eval(&u))?;
    let d = p.try_sub(&curve.z.scale(&v))?;
    let r = zariski_decompose(&d, &surface.curves, &surface.form)?;
    let n = r.negative_class(&surface.curves);
    let support: Vec<&str> = r.support.iter().map(|&k| surface.curves[k].0.as_str()).collect();
    println!("D = P(u)|{} - vZ = {d}", surface.name);
    println!("P = {}", r.positive);
    println!("N = {n}");
    println!("support = {{{}}}", support.join(", "));
    println!("P^2 = {}", surface.form.square(&r.positive)?);
    Ok(0)
}

fn effdec(path: &Path, class: &str) -> Result<u8, Fail> {
    let sc = load(path)?;
    let Some(m) = &sc.model else {
        return Err(Fail(2, format!("{}: needs [threefold]", path.display())));
    };
    let gens = sc.cone.as_ref().map_or_else(|| m.effective.clone(), |c| c.generators.clone());
    let cone = ConeSpec::new(gens)?;
    let d = parse_rational_class(class, m.basis()).map_err(|e| Fail(2, format!("--class: {e}")))?;
    match effective_decompose(&d, &cone)? {
        EffResult::Feasible(dec) => {
            for (name, c) in cone.names().iter().zip(&dec.coeffs) {
                println!("{name}: {c}");
            }
            Ok(0)
        }
        EffResult::Infeasible { witness } => {
            let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
            println!("{d} is not in the cone; separating functional ({})", w.join(", "));
            Ok(1)
        }
    }
}

fn geo(check: &str, json: bool) -> Result<u8, Fail> {
    let (_, file, text) = BUNDLED_GEO
        .iter()
        .find(|(c, _, _)| *c == check)
        .ok_or_else(|| Fail(2, format!("unknown check `{check}`")))?;
    let report = run_verify(&[(file.to_string(), text.to_string())]);
    emit(&report, json, None)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { files, json, report } => verify(files, *json, report.as_deref()),
        Command::SCurve { file, report } => s_curve(file, report.as_deref()),
        Command::SDivisor { file } => s_divisor_cmd(file),
        Command::Zariski { file, u, v } => zariski(file, u, v),
        Command::Effdec { file, class } => effdec(file, class),
        Command::Geo { check, json } => geo(check, *json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
