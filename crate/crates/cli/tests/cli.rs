//! End-to-end tests of the `mpoly` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mpoly(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mpoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mpoly");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or_default()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn generate(args: &[&str]) -> Vec<u8> {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = mpoly(&full, None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

#[test]
fn generated_cactus_pipes_into_mpoly() {
    let d2 = generate(&["D", "2"]);
    assert!(stdout(&mpoly(&["gen", "D", "2"], None)).starts_with("# D_2: 13 vertices, 16 edges\n"));
    let out = mpoly(&["mpoly", "-"], Some(&d2));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "6 x^2 y^2 + 8 x^2 y^4 + 2 x^4 y^4\n");
}

#[test]
fn index_reports_both_methods() {
    let d2 = generate(&["D", "2"]);
    let out = mpoly(&["index", "-", "--index", "symmetric_division"], Some(&d2));
    assert_eq!(stdout(&out), "36 (direct) = 36 (operator)\n");
    let out = mpoly(&["index", "-", "--index", "zagreb1", "--method", "direct"], Some(&d2));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("88"));
}

#[test]
fn lattice_polynomial() {
    let g = generate(&["G", "3", "4"]);
    let out = mpoly(&["mpoly", "-"], Some(&g));
    assert_eq!(stdout(&out), "12 x^2 y^2 + 52 x^2 y^3 + 157 x^3 y^3\n");
}

#[test]
fn table2_matches_in_range_and_notes_below_it() {
    let out = mpoly(&["table2", "D", "3"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("modified_zagreb2: formula 63/8 computed 63/8 match"));

    let out = mpoly(&["table2", "E", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("zagreb2: formula 80 computed 88 mismatch"));
    assert!(text.contains("note:"));
}

#[test]
fn gutman_file_solves_lattice_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g11.txt");
    // G(1, 1): 6 faces, 14 vertices of degree 2, 8 edges of type (2, 2)
    std::fs::write(
        &path,
        "# octagonal lattice, p = q = 1\neuler on\nn1 = 0\nn4 = 0\nn2 = 14\nf = 6\nm11 = 0\nm12 = 0\nm13 = 0\n\
         m14 = 0\nm24 = 0\nm34 = 0\nm44 = 0\nm22 = 8\n",
    )
    .unwrap();
    let out = mpoly(&["gutman", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("status: unique\n"), "{text}");
    for line in ["m23 = 12", "n3 = 8", "m33 = 6"] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn verify_passes() {
    let out = mpoly(&["verify", "--max-n", "4", "--max-pq", "3"], None);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));
}

#[test]
fn json_output() {
    let d1 = generate(&["D", "1"]);
    let out = mpoly(&["--json", "mpoly", "-"], Some(&d1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["polynomial"], "4 x^2 y^2");
    assert_eq!(v["edges"], 4);
    assert_eq!(v["terms"][0]["coeff"], "4");
}

#[test]
fn exit_codes() {
    let bad = mpoly(&["mpoly", "-"], Some(b"1 2 3\n"));
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 1"));

    let unknown = mpoly(&["index", "-", "--index", "wiener"], Some(b"1 2\n"));
    assert_eq!(unknown.status.code(), Some(2));

    let k2 = mpoly(&["index", "-", "--index", "augmented_zagreb"], Some(b"1 2\n"));
    assert_eq!(k2.status.code(), Some(3));

    let usage = mpoly(&["gen", "Z", "2"], None);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn output_is_byte_deterministic() {
    assert_eq!(generate(&["E", "4"]), generate(&["E", "4"]));
    assert_eq!(generate(&["G", "2", "5"]), generate(&["G", "2", "5"]));
    let g = generate(&["C", "3"]);
    let a = mpoly(&["--json", "mpoly", "-"], Some(&g));
    let b = mpoly(&["--json", "mpoly", "-"], Some(&g));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c2.txt");
    let out = mpoly(&["gen", "C", "2", "--out", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, generate(&["C", "2"]));
    let m = mpoly(&["mpoly", path.to_str().unwrap()], None);
    assert_eq!(m.status.code(), Some(0));
}
