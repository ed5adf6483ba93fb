mod common;

use std::process::Command;

use common::*;
use kstab::scenario::{run_verify, Status};

fn kstab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kstab"))
}

fn golden_inputs() -> Vec<(String, String)> {
    GOLDEN.iter().map(|(f, _)| (f.to_string(), read_scenario(f))).collect()
}

fn strip_timing(text: &str) -> String {
    text.lines()
        .map(|l| match l.rfind(" ms)") {
            Some(end) => {
                let start = l[..end].rfind(" (").unwrap_or(end);
                format!("{}{}", &l[..start], &l[end + 4..])
            }
            None => l.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn golden_set_reports_the_conic_discrepancy() {
    let report = run_verify(&golden_inputs());
    assert_eq!(report.count(Status::Pass), 7, "{}", report.summary());
    let failed: Vec<_> = report.entries.iter().filter(|e| e.status == Status::Fail).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].file, "quadric_conic.toml");
    assert_eq!(failed[0].computed.as_deref(), Some("13/16"));
    assert_eq!(failed[0].expected.as_deref(), Some("47/56"));
    // every intermediate check still agrees; only the final sum differs
    assert!(failed[0].trail.iter().all(|t| t.ends_with("[ok]")));
    assert_eq!(report.exit_code(), 1);
}

#[test]
fn every_other_bundled_scenario_passes() {
    let report = run_verify(&bundled());
    for e in &report.entries {
        let want = if e.file == "quadric_conic.toml" { Status::Fail } else { Status::Pass };
        assert_eq!(e.status, want, "{}: {:?}", e.file, e);
    }
}

#[test]
fn wrong_expectation_fails_with_both_values() {
    let text = read_scenario("exceptional_line_fibre.toml").replace(r#"expected = "13/16""#, r#"expected = "1/2""#);
    let report = run_verify(&[("half.toml".into(), text)]);
    let e = &report.entries[0];
    assert_eq!(e.status, Status::Fail);
    let line = report.summary();
    assert!(line.contains("computed 13/16") && line.contains("expected 1/2"), "{line}");
}

#[test]
fn malformed_file_is_isolated() {
    let mut inputs = golden_inputs();
    inputs.retain(|(f, _)| f != "quadric_conic.toml");
    inputs.insert(2, ("broken.toml".into(), "[scenario]\nname = \"x\"\nkind = \"s-curve\"\nexpected = \"1/\"\n".into()));
    let report = run_verify(&inputs);
    assert_eq!(report.entries[2].status, Status::ParseError);
    assert_eq!(report.count(Status::Pass), 7);
    assert_eq!(report.exit_code(), 2);
    let files: Vec<&str> = report.entries.iter().map(|e| e.file.as_str()).collect();
    let want: Vec<&str> = inputs.iter().map(|(f, _)| f.as_str()).collect();
    assert_eq!(files, want);
}

#[test]
fn evaluation_errors_stay_with_their_entry() {
    // a dominating class that Z - zdom is not effective for
    let text = read_scenario("quadric_ec_bound.toml").replace(r#"dominating = "l1""#, r#"dominating = "l1 + 3l2""#);
    let report = run_verify(&[("bad.toml".into(), text), ("ok.toml".into(), read_scenario("quadric_ruling_l1.toml"))]);
    assert_eq!(report.entries[0].status, Status::Error);
    assert!(report.entries[0].error.is_some());
    assert_eq!(report.entries[1].status, Status::Pass);
}

#[test]
fn reports_are_deterministic() {
    let a = run_verify(&bundled());
    let b = run_verify(&bundled());
    assert_eq!(strip_timing(&a.full()), strip_timing(&b.full()));
    let mut ja = a.clone();
    let mut jb = b.clone();
    for e in ja.entries.iter_mut().chain(jb.entries.iter_mut()) {
        e.millis = 0;
    }
    assert_eq!(ja.to_json(), jb.to_json());
}

#[test]
fn json_mirror_keeps_fractions_as_text() {
    let report = run_verify(&[("l2.toml".into(), read_scenario("quadric_ruling_l2.toml"))]);
    let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(v["entries"][0]["computed"], "89/112");
    assert_eq!(v["entries"][0]["status"], "PASS");
}

#[test]
fn cli_exit_codes() {
    let dir = scenario_dir();
    let ok = kstab().arg("verify").arg(dir.join("plane_section_line.toml")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let fail = kstab().arg("verify").arg(dir.join("quadric_conic.toml")).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let missing = kstab().arg("verify").arg(dir.join("no_such_file.toml")).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let usage = kstab().arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn cli_subcommands() {
    let dir = scenario_dir();
    let out = kstab().arg("s-curve").arg(dir.join("quadric_ruling_l1.toml")).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains(": 109/112"));

    let out = kstab().arg("s-divisor").arg(dir.join("s_divisor_exceptional_line.toml")).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("= 37/56"));

    let out = kstab()
        .args(["zariski", dir.join("plane_section_line.toml").to_str().unwrap(), "--u", "6/5", "--v", "1/2"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("P^2 = 53/100"));

    let out = kstab()
        .args(["effdec", dir.join("effective_decomposition_anticanonical.toml").to_str().unwrap()])
        .args(["--class", "4H - EC - EL"])
        .output()
        .unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("2H-EC: 1") && text.contains("H-EL: 2"), "{text}");

    for check in kstab::scenario::geo::CHECKS {
        let out = kstab().args(["geo", check]).output().unwrap();
        assert_eq!(out.status.code(), Some(0), "{check}");
    }

    let report = std::env::temp_dir().join("kstab-report-test.txt");
    let out = kstab()
        .arg("verify")
        .arg("--json")
        .arg("--report")
        .arg(&report)
        .arg(dir.join("exceptional_line_r_section.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    serde_json::from_slice::<serde_json::Value>(&out.stdout).unwrap();
    assert!(std::fs::read_to_string(&report).unwrap().contains("chart:"));
}
