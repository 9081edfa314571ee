use std::path::PathBuf;
use std::process::{Command as Process, Output};

use lconn_cli::{load_scene, run, Command, Options, Report};

fn scene(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes").join(format!("{name}.json"))
}

fn lconn(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_lconn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn spectral_reports_curve_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("branches.csv");
    let o = lconn(&["spectral", scene("one-pole").to_str().unwrap(), "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("x*eta^2 - eta - x"));
    let text = std::fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,branch,re_eta,im_eta"));
    // Check a row against the quadratic formula, eta = (1 +- sqrt(1 + 4x^2)) / 2x.
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let (x, re, im) = (f[0], f[2], f[3]);
        let residual = x * (re * re - im * im) - re - x;
        assert!(residual.abs() < 1e-9 && (2.0 * x * re * im - im).abs() < 1e-9, "{line}");
    }
}

#[test]
fn classify_genus_two_extension() {
    let o = lconn(&["classify-surface", scene("genus2-extension").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("divisor 2E"));
}

#[test]
fn malformed_rational_is_an_input_error() {
    let o = lconn(&["spectral", scene("bad-rational").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse error at poles[0]"), "{err}");
}

#[test]
fn unknown_scene_field_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scene.json");
    std::fs::write(&path, r#"{"poles": ["0"], "hhat": [["1/x"]], "colour": "red"}"#).unwrap();
    let o = lconn(&["spectral", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown field"));
}

#[test]
fn failed_verdict_exits_one() {
    let o = lconn(&["flow", scene("two-pole").to_str().unwrap(), "--tol", "1e-30", "--flow-T", "0.1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL spectral drift"));
}

#[test]
fn module_error_exits_two() {
    // A single Case1 pole with this constant has an empty divisor.
    let o = lconn(&["darboux-check", scene("one-pole").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-generic divisor"));
}

#[test]
fn torsor_class_matches_degree() {
    let o = lconn(&["torsor-class", scene("o-minus-2").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("class: -2"));
    let o = lconn(&["torsor-class", scene("trivial-shift").to_str().unwrap()]);
    assert!(stdout(&o).contains("class: 0"));
    assert!(stdout(&o).contains("PASS section iff class zero"));
}

#[test]
fn reports_round_trip_byte_identically() {
    let cases = [
        ("torsor-class", "o-minus-2"),
        ("classify-surface", "genus2-extension"),
        ("spectral", "two-pole"),
        ("normal-form", "nilpotent"),
        ("involution", "two-pole"),
        ("leaf-check", "two-pole"),
        ("flow", "darboux"),
        ("darboux-check", "two-pole"),
        ("lattices", "nilpotent"),
        ("roundtrip", "two-pole"),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (cmd, name) in cases {
        let first = dir.path().join(format!("{cmd}-1.json"));
        let second = dir.path().join(format!("{cmd}-2.json"));
        let o = lconn(&[cmd, scene(name).to_str().unwrap(), "--seed", "7", "--json", first.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&first).unwrap();
        let report = Report::from_json(&text).unwrap();
        assert_eq!(report.to_json(), text, "{cmd}: report re-parses to the same bytes");
        // Re-run from the report itself: its echoed scene carries the seed.
        let o = lconn(&[cmd, first.to_str().unwrap(), "--json", second.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(std::fs::read_to_string(&second).unwrap(), text, "{cmd}: re-run differs");
    }
}

#[test]
fn flags_override_scene_options() {
    let text = std::fs::read_to_string(scene("darboux")).unwrap();
    let mut s = load_scene(&text).unwrap();
    s.options.flow_dt = Some(0.01);
    let over = Options { flow_dt: Some(0.02), ..Options::default() };
    let out = run(Command::Flow, &s, &over).unwrap();
    assert_eq!(out.report.scene.options.flow_dt, Some(0.02));
    assert_eq!(out.report.values["steps"], 50);
}

#[test]
fn every_command_parses_from_its_name() {
    for c in Command::ALL {
        assert_eq!(c.name().parse::<Command>().unwrap(), c);
    }
    assert!("spectra".parse::<Command>().is_err());
}
