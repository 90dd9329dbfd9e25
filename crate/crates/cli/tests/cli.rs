use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn ppoly(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ppoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn enumerate_small_sizes() {
    let out = ppoly(&["enumerate", "pasm", "2", "3"], "");
    assert!(out.status.success());
    let list = json(&out);
    assert_eq!(list.as_array().unwrap().len(), 17);
    assert!(list
        .as_array()
        .unwrap()
        .iter()
        .any(|x| x == &serde_json::json!([[0, 1, 0], [1, -1, 1]])));
    let out = ppoly(&["enumerate", "pperm", "2", "3"], "");
    assert_eq!(json(&out).as_array().unwrap().len(), 13);
    let out = ppoly(&["enumerate", "pasm", "6", "6", "--count"], "");
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "1442764");
}

#[test]
fn big_listings_are_gated() {
    let out = ppoly(&["enumerate", "pasm", "6", "6"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("--long-running"));
}

#[test]
fn volume_as_csv_and_json() {
    let out = ppoly(
        &["volume", "permutohedron", "3", "3", "--format", "csv"],
        "",
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text,
        "kind,m,n,dim,normalized_volume,ehrhart\npermutohedron,3,3,3,129,1 15/2 21 43/2\n"
    );
    let out = ppoly(&["volume", "pasm", "2", "2"], "");
    let v = json(&out);
    assert_eq!(v["normalized_volume"], "6");
    assert_eq!(v["ehrhart"]["coeffs"][4], "1/4");
}

#[test]
fn volume_guard_reports_the_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_ppoly"))
        .args(["volume", "pasm", "2", "3"])
        .env("PPOLY_MAX_STATES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cap of 10"));
    let out = ppoly(&["volume", "pasm", "4", "4"], "");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn membership_exit_codes() {
    let inside = ppoly(&["check", "pasm"], r#"[[0, "1/2"], ["1/2", "-1/2"]]"#);
    assert!(inside.status.success());
    assert_eq!(json(&inside)["member"], true);
    let outside = ppoly(&["check", "pperm"], r#"[[0, "1/2"], ["1/2", "-1/2"]]"#);
    assert_eq!(outside.status.code(), Some(1));
    assert!(json(&outside)["violated"].is_object());
    let point = ppoly(
        &["check", "permutohedron", "--n", "3"],
        r#"["5/2", 2, "1/2"]"#,
    );
    assert_eq!(json(&point)["member"], true);
    let point = ppoly(&["check", "permutohedron", "--n", "3"], "[3, 3, 0]");
    assert_eq!(point.status.code(), Some(1));
    let bad = ppoly(&["check", "pasm"], "[[1, 2], [3]]");
    assert_eq!(bad.status.code(), Some(2));
    let bad = ppoly(&["check", "permutohedron"], "[1]");
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn decompose_reference_point() {
    let x = r#"[["1/5","2/5","3/10"],["7/10","-3/10","-1/10"],[0,"1/2","-1/5"]]"#;
    let out = ppoly(&["decompose"], x);
    assert!(out.status.success());
    let d = json(&out);
    let terms = d["terms"].as_array().unwrap();
    assert!(terms.len() <= 19);
    let total: i64 = terms
        .iter()
        .map(|t| {
            let s = t["lambda"].as_str().unwrap();
            let (p, q) = s.split_once('/').unwrap_or((s, "1"));
            p.parse::<i64>().unwrap() * 1000 / q.parse::<i64>().unwrap()
        })
        .sum();
    assert_eq!(total, 1000);
    let again = ppoly(&["decompose"], x);
    assert_eq!(out.stdout, again.stdout);
    let outside = ppoly(&["decompose"], "[[-1]]");
    assert_eq!(outside.status.code(), Some(1));
}

#[test]
fn facet_lists() {
    let out = ppoly(&["facets", "pasm", "3", "3"], "");
    assert_eq!(json(&out).as_array().unwrap().len(), 4 * 9 - 18 + 5);
    let out = ppoly(
        &["facets", "permutohedron", "3", "2", "--format", "csv"],
        "",
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 + 7 - 3);
    assert_eq!(text.lines().next(), Some("x0,x1,x2,relation,rhs"));
    assert_eq!(
        ppoly(&["facets", "pperm", "1", "3"], "").status.code(),
        Some(2)
    );
}

#[test]
fn face_lattices() {
    let out = ppoly(&["face-lattice", "stellohedron", "2"], "");
    let v = json(&out);
    assert_eq!(v["nodes"].as_array().unwrap().len(), 12);
    let out = ppoly(&["face-lattice", "pasm", "2", "2"], "");
    let v = json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 8);
    let top = v["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["dim"].as_i64().unwrap())
        .max();
    assert_eq!(top, Some(4));
    assert_eq!(
        ppoly(&["face-lattice", "pasm", "2"], "").status.code(),
        Some(2)
    );
}

#[test]
fn projection_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.json");
    let x = dir.path().join("x.json");
    std::fs::write(&z, r#"[2, 1]"#).unwrap();
    std::fs::write(&x, r#"[[0, 1, 0], [1, -1, 0]]"#).unwrap();
    let out = ppoly(&["project", z.to_str().unwrap(), x.to_str().unwrap()], "");
    assert!(out.status.success());
    assert_eq!(json(&out), serde_json::json!(["1", "1", "0"]));
    let out = ppoly(
        &["project", z.to_str().unwrap(), "-"],
        r#"[["1/2", 0], [0, 1]]"#,
    );
    assert_eq!(json(&out), serde_json::json!(["1", "1"]));
}

#[test]
fn quick_verifications() {
    for target in ["separation", "projection", "vertices", "enumeration"] {
        let out = ppoly(&["verify", target], "");
        assert!(out.status.success(), "{target}");
        assert_eq!(json(&out)["pass"], true);
    }
    let out = ppoly(&["verify", "conjectures", "--scope", "quick"], "");
    assert!(out.status.success());
    let out = ppoly(
        &["verify", "decomposition", "--samples", "20", "--seed", "3"],
        "",
    );
    assert!(out.status.success());
    let out = ppoly(&["verify", "theorem-p2n", "--n-max", "4"], "");
    assert!(out.status.success());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        ppoly(&["volume", "cube", "2", "2"], "").status.code(),
        Some(2)
    );
    assert_eq!(ppoly(&["verify", "everything"], "").status.code(), Some(2));
    assert_eq!(
        ppoly(&["decompose", "--max-leaves", "3"], "").status.code(),
        Some(2)
    );
}
