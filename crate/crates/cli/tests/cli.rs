use std::io::Write;
use std::process::{Command, Output};

fn gpthide(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpthide"))
        .args(args)
        .env_remove("GPTHIDE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// `name,value` rows as pairs.
fn pairs(o: &Output) -> Vec<(String, f64)> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| {
            let (k, v) = l.split_once(',').unwrap();
            (k.to_string(), v.parse().unwrap())
        })
        .collect()
}

fn value(rows: &[(String, f64)], key: &str) -> f64 {
    rows.iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("no row {key}"))
        .1
}

fn temp_csv(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn norm_of_lifted_identity_on_spherical_pair() {
    let f = temp_csv("1,0,0\n0,1,0\n0,0,1\n");
    let o = gpthide(&[
        "norm",
        "--model",
        "spherical:4,spherical:4",
        "--tensor",
        f.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = pairs(&o);
    assert!((value(&rows, "base") - 3.0).abs() < 1e-9);
    assert!((value(&rows, "sep") - 1.0).abs() < 1e-12);
}

#[test]
fn norm_of_werner_operator() {
    let o = gpthide(&["norm", "--model", "quantum:2", "--werner", "1,-1"]);
    assert!(o.status.success());
    let rows = pairs(&o);
    assert_eq!(value(&rows, "trace"), 2.0);
    assert!((value(&rows, "sep") - 4.0 / 3.0).abs() < 1e-15);
    assert_eq!(value(&rows, "w"), 4.0);
}

#[test]
fn malformed_tensor_reports_position() {
    let f = temp_csv("1,2\n3,oops\n");
    let o = gpthide(&[
        "norm",
        "--model",
        "spherical:3",
        "--tensor",
        f.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 2"), "{}", stderr(&o));
}

#[test]
fn intractable_norms_are_surfaced() {
    // A qubit-pair coordinate matrix outside the Werner class: only the trace norm is exact.
    let f = temp_csv("0.5,0,0,0\n0,0.3,0.2,0\n0,0,0,0\n0,0,0,0.1\n");
    let path = f.path().to_str().unwrap();
    let o = gpthide(&["norm", "--model", "quantum:2", "--tensor", path]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = pairs(&o);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].0, "trace");
    assert!(stderr(&o).contains("sep: intractable"), "{}", stderr(&o));
    // quantum:3 needs 9 × 9 coordinates.
    assert_eq!(
        gpthide(&["norm", "--model", "quantum:3", "--tensor", path])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn ratio_examples() {
    let o = gpthide(&["ratio", "--model", "wtheory:3"]);
    assert_eq!(value(&pairs(&o), "werner"), 5.0);
    let rows = pairs(&gpthide(&["ratio", "--model", "cubic:8"]));
    assert_eq!(value(&rows, "lower"), 2.0);
    assert_eq!(value(&rows, "upper"), 4.0);
    assert_eq!(value(&rows, "werner"), 1.0);
    assert!(value(&rows, "witness") >= 8f64.sqrt());
    assert_eq!(
        value(
            &pairs(&gpthide(&["ratio", "--model", "classical:5"])),
            "werner"
        ),
        1.0
    );
    let o = gpthide(&["ratio", "--model", "qubit:2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gpthide(&["norm", "--werner", "1,1"]).status.code(), Some(2));
    assert_eq!(gpthide(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        gpthide(&["sweep", "--kind", "quantum", "--range", "x..3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn quantum_sweep_ratio_equals_dimension() {
    let o = gpthide(&["sweep", "--kind", "quantum", "--range", "2..6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("model,dim,werner,qm_sep,w_sep"));
    for (n, line) in (2..=6).zip(lines) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1].parse::<usize>().unwrap(), n);
        assert_eq!(cells[3].parse::<f64>().unwrap(), n as f64);
    }
}

#[test]
fn empty_range_gives_header_only() {
    let o = gpthide(&["sweep", "--kind", "cubic", "--range", "5..4"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "model,dim,werner,witness,lower,upper,sandwich_lower,sandwich_upper\n"
    );
}

#[test]
fn seeded_sweeps_are_byte_identical() {
    let args = [
        "sweep",
        "--kind",
        "appendix-c",
        "--range",
        "4..6",
        "--seed",
        "9",
    ];
    let a = gpthide(&args);
    let b = gpthide(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let via_env = Command::new(env!("CARGO_BIN_EXE_gpthide"))
        .args(&args[..5])
        .env("GPTHIDE_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(a.stdout, via_env.stdout);
    let other = gpthide(&[
        "sweep",
        "--kind",
        "appendix-c",
        "--range",
        "4..6",
        "--seed",
        "10",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn verify_subset_and_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = gpthide(&[
        "verify",
        "--only",
        "werner-ratios",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let checks = &report["criteria"][0]["checks"];
    assert_eq!(checks.as_array().unwrap().len(), 2);
    for key in ["id", "paper_ref", "expected", "measured", "tol", "pass"] {
        assert!(checks[0].get(key).is_some(), "missing {key}");
    }
}

#[test]
fn zero_tolerance_fails_and_names_criterion() {
    let o = gpthide(&[
        "verify",
        "--only",
        "werner-closed-forms",
        "--tolerance",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("criterion 1 (werner-closed-forms)"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn unmatched_filter_is_a_usage_error() {
    assert_eq!(
        gpthide(&["verify", "--only", "nothing-matches"])
            .status
            .code(),
        Some(2)
    );
}
