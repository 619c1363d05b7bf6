use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_regmatch"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn poly_of_k4_from_stdin() {
    let o = run(&["poly"], "C~\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 6 3\n");
}

#[test]
fn poly_of_empty_graph() {
    let o = run(&["poly", "?"], "");
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn malformed_line_exits_2_and_names_the_line() {
    let o = run(&["poly"], "C~\n\nnot graph6 ~~\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn bad_lambda_exits_2() {
    let o = run(&["verify", "--necklaces", "2", "--lambda", "1/0"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ak_table_rows() {
    let o = run(&["ak-table", "--d", "3", "--k", "10", "--format", "csv"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[1], "2a_k(K_4),3,15,81,441,2403,13095,71361,388881,2119203,11548575");
    assert_eq!(rows[2], "2a_k(T_3),3,15,87,543,3543,23823,163719,1143999,8099511,57959535");
    assert_eq!(rows[3], "2a_k(DN_3),3,15,84,493,2973,18261,113676,714849,4530843,28897155");
    assert_eq!(rows[4], "2a_k(DN_2),3,15,84,493,2973,18255,113494,711673,4488663,28422175");
}

#[test]
fn verify_is_deterministic_and_writes_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let args = [
        "verify", "--d", "3", "--nmax", "8", "--grid-step", "1/40", "--grid-max", "0.3575", "--necklaces", "3", "--format",
        "json",
    ];
    let a = run(&args, "");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let b = run(&with_out, "");
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.status.code(), Some(0));
    let va: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let vb: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(va["checksum"], vb["checksum"]);
    assert_eq!(va["items"], vb["items"]);
    assert!(va["corpus_checksum"].is_string());
    let items = va["items"].as_array().unwrap();
    // eight cubic graphs up to 8 vertices plus DN_2 and DN_3, at 14 grid points
    assert_eq!(items.len(), 10 * 14);
    assert!(items.iter().all(|r| r[4] == "HOLDS"));
}

#[test]
fn verify_reads_graph6_input() {
    let o = run(&["verify", "--d", "3", "--input", "-", "--lambda", "1/8", "--format", "csv"], "EFz_\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().contains(",HOLDS,"));
}

#[test]
fn verify_rejects_irregular_input() {
    let o = run(&["verify", "--d", "3", "--input", "-", "--lambda", "1/8"], "Bw\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ladder_covers_target() {
    let o = run(&["ladder"], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("COVERED (0, 0.357500]"));
}

#[test]
fn ladder_reports_gap() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("ladder.txt");
    std::fs::write(&f, "# too short\n0.2\n0.5\n").unwrap();
    let o = run(&["ladder", "--ladder", f.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("GAP"));
}

#[test]
fn cd_brackets_are_certified() {
    let o = run(&["cd", "--dmax", "11", "--format", "csv"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 5);
    assert!(text.lines().nth(2).unwrap().starts_with("5,1.317124345"));
}

#[test]
fn polytope_excludes_complete_graph() {
    let o = run(&["polytope", "--d", "4", "--nmax", "7"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("EXCLUDED"));
    assert!(text.contains("T(4) = 35·ln 5"));
}

#[test]
fn necklace_trace_identity() {
    let o = run(&["necklace", "--graph", "petersen", "--k", "2,3", "--lambda", "1/3"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("HOLDS").count(), 4);
}
