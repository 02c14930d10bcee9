use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use polyderive::{Scalar, Vec3};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polyderive"));
    c.env_remove("POLYDERIVE_SEED");
    c
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn check_reports_regular_fixtures() {
    for name in ["quadrangle", "pentagon_plane", "hexagon_strong"] {
        let f = fixture(name);
        let out = run(&["check", f.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{name}");
        let v = json(&out);
        assert_eq!(v["verdict"]["regular"], true);
        assert_eq!(v["genericity"]["generic"], true);
    }
    let out = run(&["check", fixture("hexagon_strong").to_str().unwrap()]);
    let deltas: Vec<String> = serde_json::from_value(json(&out)["deltas"].clone()).unwrap();
    assert_eq!(deltas, ["1", "2", "9", "15", "-20", "-6"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("-180"));
}

#[test]
fn derive_needs_alpha_for_even_polygons() {
    let f = fixture("hexagon_strong");
    let out = run(&["derive", f.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());

    let out = run(&["derive", f.to_str().unwrap(), "--alpha", "-3/2", "--oracle"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["support_system"]["alpha"], "-3/2");
    assert_eq!(v["derived_analysis"]["hexagon"]["strongly_regular"], true);
    assert_eq!(v["oracle_results"]["pass"], true);
}

#[test]
fn derive_odd_roots() {
    let f = fixture("pentagon_plane");
    let pos = json(&run(&["derive", f.to_str().unwrap()]));
    let neg = json(&run(&["derive", f.to_str().unwrap(), "--negative-root"]));
    assert_eq!(pos["support_system"]["alpha"], "12");
    assert_eq!(neg["support_system"]["alpha"], "-12");
    assert_eq!(
        neg["support_system"]["u"][0],
        serde_json::json!(["2", "2", "1"])
    );

    let out = run(&["derive", f.to_str().unwrap(), "--alpha", "5"]);
    assert_eq!(code(&out), 2);

    let f = fixture("pentagon_sqrt");
    let out = run(&["derive", f.to_str().unwrap(), "--oracle"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["support_system"]["alpha"]["d"], "8/5");
    assert_eq!(v["derived_analysis"]["planarity"]["planar"], true);
}

#[test]
fn analyze_reports_type_and_defect() {
    let f = fixture("hexagon_type_change");
    let out = run(&["analyze", f.to_str().unwrap(), "--oracle"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["analysis"]["hexagon"]["strongly_regular"], true);
    assert_ne!(
        v["analysis"]["derivability_defect"],
        serde_json::json!(["0", "0", "0"])
    );
}

#[test]
fn bad_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[0, 0, 0], [1, 2]]}").unwrap();
    assert_eq!(code(&run(&["check", bad.to_str().unwrap()])), 2);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&run(&["check", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&run(&["check", "/nonexistent/polygon.json"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 2);
}

#[test]
fn stdin_input() {
    let mut child = bin()
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let text = std::fs::read(fixture("quadrangle")).unwrap();
    child.stdin.take().unwrap().write_all(&text).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["input"]["n"], 4);
}

#[test]
fn generate_is_deterministic() {
    for kind in ["quad", "pentagon", "hexagon-lift", "alt-sign"] {
        let a = run(&["generate", "--kind", kind, "--seed", "42"]);
        let b = run(&["generate", "--kind", kind, "--seed", "42"]);
        let c = bin()
            .args(["generate", "--kind", kind])
            .env("POLYDERIVE_SEED", "42")
            .output()
            .unwrap();
        assert_eq!(code(&a), 0, "{kind}");
        assert_eq!(a.stdout, b.stdout, "{kind}");
        assert_eq!(a.stdout, c.stdout, "{kind}");
        let other = run(&["generate", "--kind", kind, "--seed", "43"]);
        assert_ne!(a.stdout, other.stdout, "{kind}");
        assert_eq!(json(&a)["seed"], 42);
    }
}

#[test]
fn generated_fixtures_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let hex = dir.path().join("hex.json");
    let out = run(&[
        "generate",
        "--kind",
        "hexagon-lift",
        "--seed",
        "7",
        "--out",
        hex.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let support: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("hex.support.json")).unwrap(),
    )
    .unwrap();
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&hex).unwrap()).unwrap();
    assert_eq!(doc["support"], support);

    // Support systems of one polygon differ by u_odd → λu_odd, u_even → u_even/λ.
    let derived = json(&run(&["derive", hex.to_str().unwrap(), "--alpha", "1"]));
    let ours: Vec<Vec3> = serde_json::from_value(derived["support_system"]["u"].clone()).unwrap();
    let lifted: Vec<Vec3> = serde_json::from_value(support["u"].clone()).unwrap();
    let (a, b) = [
        (&ours[0].x, &lifted[0].x),
        (&ours[0].y, &lifted[0].y),
        (&ours[0].z, &lifted[0].z),
    ]
    .into_iter()
    .find(|(_, b)| !b.is_zero())
    .unwrap();
    let lambda = a / b;
    for (i, (a, b)) in ours.iter().zip(&lifted).enumerate() {
        let k = if i % 2 == 0 {
            lambda.clone()
        } else {
            lambda.recip().unwrap()
        };
        assert_eq!(*a, b.scale(&k), "u{}", i + 1);
    }

    for (kind, regular) in [("quad", 0), ("pentagon", 0), ("alt-sign", 1)] {
        let p = dir.path().join(format!("{kind}.json"));
        run(&[
            "generate",
            "--kind",
            kind,
            "--seed",
            "3",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(
            code(&run(&["check", p.to_str().unwrap()])),
            regular,
            "{kind}"
        );
    }
    let p = dir.path().join("alt-sign.json");
    assert_eq!(
        code(&run(&["derive", p.to_str().unwrap(), "--alpha", "1"])),
        1
    );
}

#[test]
fn verify_runs_suites() {
    let out = run(&["verify", "--suite", "eq2", "--samples", "20", "--seed", "9"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["suites"][0]["suite"], "eq2");
    assert_eq!(v["suites"][0]["passed"], 20);

    let out = run(&["verify", "--samples", "3", "--seed", "9"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["suites"].as_array().unwrap().len(), 9);
}

#[test]
fn plot_tags_parallel_planes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = run(&[
        "derive",
        fixture("hexagon_strong").to_str().unwrap(),
        "--alpha",
        "1",
    ]);
    std::fs::write(&report, &out.stdout).unwrap();
    let out = run(&["plot", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# planes parallel"));
    assert!(text.contains("v 1 0 0 1 plane=1"));
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 6);

    let out = run(&["plot", fixture("quadrangle").to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# n 4"));
    assert!(!text.contains("plane="));
}
