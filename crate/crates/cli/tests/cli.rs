use std::path::Path;
use std::process::{Command, Output};

fn qbg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbg"))
        .args(args)
        .output()
        .expect("run qbg")
}

fn stdout(args: &[&str]) -> String {
    let out = qbg(args);
    assert!(
        out.status.success(),
        "qbg {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn dist_examples() {
    assert_eq!(stdout(&["dist", "321", "213"]).trim(), "ell=2 weight=q1*q2");
    let long = stdout(&["dist", "7364152", "2513746"]);
    assert!(long.contains("weight=q1*q2*q3^2*q4^2*q5*q6"), "{long}");
    assert_eq!(stdout(&["dist", "123", "123"]).trim(), "ell=0 weight=1");
    assert_eq!(
        stdout(&["dist", "321", "213", "--oracle"]).trim(),
        "ell=2 weight=q1*q2"
    );
    let both = stdout(&["dist", "4321", "3142", "--both"]);
    assert!(both.ends_with("agree: yes\n"), "{both}");
}

#[test]
fn mismatched_sizes_are_usage_errors() {
    let out = qbg(&["dist", "12", "123"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size mismatch"));
}

#[test]
fn graph_exports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g3.dot");
    stdout(&["graph", "--n", "3", "--format", "dot", "--out", path(&dot)]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(text.matches("->").count(), 15);
    assert!(text.contains(r#""321" -> "123""#));

    let json = stdout(&["graph", "--n", "2", "--format", "json"]);
    let edges = &json[json.find("\"edges\"").expect("edges key")..];
    assert_eq!(edges.matches("\"source\"").count(), 2);

    let out = qbg(&["graph", "--n", "12"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn interval_listing_and_hasse() {
    let out = stdout(&["interval", "132", "321"]);
    assert!(out.starts_with("interval [132, 321]: 4 members"), "{out}");
    assert!(out.contains("rank 1: 231 312"));
    assert!(stdout(&["interval", "263145", "465123"]).contains("265143"));
    assert!(stdout(&["interval", "123", "123"]).contains("1 member,"));

    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("h.json");
    stdout(&[
        "interval",
        "132",
        "321",
        "--hasse",
        "--format",
        "json",
        "--out",
        path(&file),
    ]);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.contains("\"132\""));
}

#[test]
fn diagram_examples() {
    let out = stdout(&["diagram", "4321", "3142", "--a", "4,4,2"]);
    assert!(out.contains("cells: {(1,2), (2,2)}"), "{out}");
    assert!(out.contains("cells: {(2,2)}"), "{out}");
    assert!(out.contains("count: 3 = C(4,2) - ell = 6 - 3"));

    let out = stdout(&[
        "diagram",
        "263145",
        "465123",
        "--a",
        "2,2,2,6,6",
        "--x",
        "265143",
    ]);
    assert_eq!(out.matches("*P[").count(), 2, "{out}");
    assert!(out.contains("count: 11"));

    let out = stdout(&["diagram", "2413", "2413", "--a", "auto"]);
    assert!(out.contains("count: 6 = C(4,2) - ell = 6 - 0"));

    let bad = qbg(&["diagram", "4321", "3142", "--a", "1,1,1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("precondition"));
    let bad_x = qbg(&["diagram", "4321", "3142", "--x", "4321"]);
    assert_eq!(bad_x.status.code(), Some(2));
}

#[test]
fn sample_then_stratify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f.txt");
    stdout(&[
        "sample",
        "--u",
        "4321",
        "--v",
        "3142",
        "--seed",
        "5",
        "--out",
        path(&file),
    ]);
    let out = stdout(&[
        "stratify",
        "--matrix",
        path(&file),
        "--u",
        "4321",
        "--v",
        "3142",
    ]);
    assert!(out.starts_with("x=4321 y=3142\n"), "{out}");
    assert!(out.contains("verified"));

    // a smaller stratum inside [id, w0]
    stdout(&["sample", "--u", "213", "--v", "231", "--out", path(&file)]);
    let out = stdout(&[
        "stratify",
        "--matrix",
        path(&file),
        "--u",
        "id",
        "--v",
        "w0",
    ]);
    assert!(out.starts_with("x=213 y=231\n"), "{out}");
}

#[test]
fn samples_are_deterministic() {
    let a = stdout(&["sample", "--u", "id", "--v", "w0:4", "--seed", "9"]);
    let b = stdout(&["sample", "--u", "id", "--v", "w0:4", "--seed", "9"]);
    assert_eq!(a, b);
    assert!(a.starts_with("4\n"));
}

#[test]
fn point_stratum_sample_has_permutation_pattern() {
    let out = stdout(&["sample", "--u", "2413", "--v", "2413"]);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();
    let w = [2, 4, 1, 3];
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            assert_eq!(*x != "0", w[c] == r + 1, "{out}");
        }
    }
}

#[test]
fn stratify_fixed_points_and_non_members() {
    let dir = tempfile::tempdir().unwrap();
    let id = dir.path().join("id.txt");
    std::fs::write(&id, "3\n1 0 0\n0 1 0\n0 0 1\n").unwrap();
    let out = stdout(&["stratify", "--matrix", path(&id), "--u", "id", "--v", "w0"]);
    assert!(out.starts_with("x=123 y=123"));

    let pm = dir.path().join("pm.txt");
    std::fs::write(&pm, "3\n0 0 1\n1 0 0\n0 1 0\n").unwrap();
    let out = stdout(&[
        "stratify",
        "--matrix",
        path(&pm),
        "--u",
        "123",
        "--v",
        "321",
    ]);
    assert!(out.starts_with("x=231 y=231"), "{out}");

    let miss = qbg(&[
        "stratify",
        "--matrix",
        path(&id),
        "--u",
        "213",
        "--v",
        "213",
    ]);
    assert_eq!(miss.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&miss.stdout).contains("not a member"));

    let gone = qbg(&[
        "stratify",
        "--matrix",
        "/nonexistent/m.txt",
        "--u",
        "12",
        "--v",
        "21",
    ]);
    assert!(String::from_utf8_lossy(&gone.stderr).contains("/nonexistent/m.txt"));
}

#[test]
fn verify_reports() {
    assert_eq!(
        stdout(&["verify", "--suite", "distance", "--n", "4"]).trim(),
        "PASS distance n=4: 576 pairs, 0 mismatches"
    );
    assert_eq!(
        stdout(&["verify", "--suite", "tilted", "--n", "3"]).trim(),
        "PASS tilted n=3: 216 triples, equivalences hold"
    );
    assert_eq!(
        stdout(&["verify", "--suite", "flat-count", "--n", "5"]).trim(),
        "PASS flat-count n=5: 14400 pairs, count law holds"
    );
    let out = qbg(&["verify", "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_is_byte_stable() {
    let args = [
        "verify",
        "--suite",
        "stratify",
        "--n",
        "3",
        "--seed",
        "4",
        "--samples",
        "2",
    ];
    assert_eq!(stdout(&args), stdout(&args));
}
