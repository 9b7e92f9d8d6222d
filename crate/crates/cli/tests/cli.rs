use std::path::{Path, PathBuf};
use std::process::Command;

use supportwit::cert::{Certificate, Status};

const BIN: &str = env!("CARGO_BIN_EXE_supportwit");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_reports_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let ci = write(
        dir.path(),
        "ci.json",
        r#"{"field": "QQ", "variables": ["x", "y"], "generators": ["x^2", "y^2"]}"#,
    );
    let (code, out, _) = run(&["analyze", s(&ci)]);
    assert_eq!(code, 0);
    assert!(out.contains("complete intersection: yes"), "{out}");
    assert!(out.contains("witness construction applicable: no"), "{out}");

    let (code, out, _) = run(&["analyze", s(&ci), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["analysis"]["n"], 2);
}

#[test]
fn malformed_input_exits_3_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        "{\n  \"field\": \"QQ\",\n  \"variables\": [\"x\"\n}\n",
    );
    let (code, _, err) = run(&["analyze", s(&bad)]);
    assert_eq!(code, 3);
    assert!(err.contains("line 4"), "{err}");

    let poly = write(
        dir.path(),
        "poly.json",
        r#"{"field": "QQ", "variables": ["x"], "generators": ["x^2 + * x"]}"#,
    );
    let (code, _, err) = run(&["construct", s(&poly)]);
    assert_eq!(code, 3);
    assert!(err.contains("line 1, column"), "{err}");

    let (code, _, _) = run(&["analyze", "/nonexistent/ring.json"]);
    assert_eq!(code, 3);
    let (code, _, _) = run(&["construct"]);
    assert_eq!(code, 3);
    let (code, _, err) = run(&["example", "nope"]);
    assert_eq!(code, 3);
    assert!(err.contains("unknown example"), "{err}");
}

#[test]
fn small_prime_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f7 = write(
        dir.path(),
        "f7.json",
        r#"{"field": {"Fp": 7}, "variables": ["x", "y", "z"], "generators": ["x^2", "y^2", "xy", "z^2", "xz"]}"#,
    );
    let (code, _, err) = run(&["construct", s(&f7)]);
    assert_eq!(code, 3);
    assert!(err.contains("p >= 101"), "{err}");
}

#[test]
fn complete_intersection_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let ci = write(
        dir.path(),
        "ci.json",
        r#"{"field": "QQ", "variables": ["x", "y"], "generators": ["x^2", "y^2"]}"#,
    );
    let out = dir.path().join("c.json");
    let (code, stdout, _) = run(&["construct", s(&ci), "-o", s(&out)]);
    assert_eq!(code, 2, "{stdout}");
    let c = Certificate::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c.status, Status::CompleteIntersection);
    let (code, _, _) = run(&["verify", s(&ci), s(&out)]);
    assert_eq!(code, 0);
}

#[test]
fn exhausted_search_writes_partial_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(
        dir.path(),
        "r.json",
        r#"{"field": "QQ", "variables": ["x", "y"], "generators": ["x^2 + y^3", "x^2 + xy^2", "y^5"]}"#,
    );
    let out = dir.path().join("partial.json");
    let (code, _, err) = run(&[
        "construct",
        s(&ring),
        "--assume-minimal",
        "--max-attempts",
        "5",
        "-o",
        s(&out),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("after 5 attempts"), "{err}");
    let c = Certificate::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(!c.status.is_witness());
}

#[test]
fn monomial_ideals_use_the_recipe() {
    let dir = tempfile::tempdir().unwrap();
    let ring = write(
        dir.path(),
        "m.json",
        r#"{"field": "QQ", "variables": ["x", "y", "z", "w"], "generators": ["xy", "yz", "zw", "x^2w"]}"#,
    );
    let (code, out, _) = run(&["analyze", s(&ring)]);
    assert_eq!(code, 0);
    assert!(out.contains("monomial recipe"), "{out}");

    for cmd in ["construct", "monomial"] {
        let cert = dir.path().join(format!("{cmd}.json"));
        let (code, _, _) = run(&[cmd, s(&ring), "-o", s(&cert)]);
        assert_eq!(code, 0);
        let c = Certificate::from_json(&std::fs::read_to_string(&cert).unwrap()).unwrap();
        assert_eq!(c.steps.len(), 4);
        assert_eq!(c.intersection.dim, 0);
        let (code, out, _) = run(&["verify", s(&ring), s(&cert)]);
        assert_eq!(code, 0, "{out}");
    }

    let comparable = write(
        dir.path(),
        "c.json",
        r#"{"field": "QQ", "variables": ["x", "y"], "generators": ["x^2", "xy"]}"#,
    );
    let (code, _, err) = run(&["monomial", s(&comparable)]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn tampered_certificate_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["example", "shortgor3", "-o", s(dir.path())]);
    assert_eq!(code, 0);
    let ring = dir.path().join("shortgor3.ring.json");
    let cert = dir.path().join("shortgor3.cert.json");
    let text = std::fs::read_to_string(&cert).unwrap();
    let mut c = Certificate::from_json(&text).unwrap();
    c.steps[2].running_dim = 1;
    let forged = write(dir.path(), "forged.json", &c.to_json());
    let (code, out, _) = run(&["verify", s(&ring), s(&forged)]);
    assert_eq!(code, 4);
    assert!(out.contains("verification failed"), "{out}");

    let (code, out, _) = run(&["verify", s(&ring), s(&cert), "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);

    let garbage = write(dir.path(), "garbage.json", "{\"format\": 1}");
    let (code, _, _) = run(&["verify", s(&ring), s(&garbage)]);
    assert_eq!(code, 3);
}

#[test]
fn examples_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let complex = write(
        dir.path(),
        "triangle.json",
        r#"{"variables": ["a", "b", "c", "d"], "facets": [["a", "b"], ["c"], ["d"]]}"#,
    );
    let sr = format!("sr:{}", s(&complex));
    for (name, slug) in [
        ("shortgor3", "shortgor3"),
        ("thomas", "thomas"),
        ("monomial4", "monomial4"),
        ("truncated:3,2", "truncated-3-2"),
        (sr.as_str(), "sr-triangle"),
    ] {
        let (code, _, err) = run(&["example", name, "-o", s(dir.path())]);
        assert_eq!(code, 0, "{name}: {err}");
        let ring = dir.path().join(format!("{slug}.ring.json"));
        let cert = dir.path().join(format!("{slug}.cert.json"));
        let (code, out, _) = run(&["verify", s(&ring), s(&cert)]);
        assert_eq!(code, 0, "{name}: {out}");
    }
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    run(&["example", "shortgor3", "-o", s(dir.path())]);
    let ring = dir.path().join("shortgor3.ring.json");
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let (code, _, _) = run(&["construct", s(&ring), "--seed", "4", "-o", s(out)]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (code, json, _) = run(&["construct", s(&ring), "--seed", "4", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(json.as_bytes(), std::fs::read(&a).unwrap());
}
