//! Golden transcripts: run the built binary and compare stdout and exit
//! codes byte for byte.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

struct Run {
    stdout: String,
    code: i32,
}

fn ifpart(args: &[&str], stdin: &[u8]) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ifpart"))
        .args(args)
        .current_dir(env!("CARGO_TARGET_TMPDIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        code: out.status.code().expect("exited normally"),
    }
}

fn fixture(name: &str, body: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn sharpness_pipes_into_mad() {
    let s = ifpart(&["analyze", "sharpness", "--k", "3"], b"");
    assert_eq!(s.code, 0);
    let m = ifpart(&["analyze", "mad"], s.stdout.as_bytes());
    assert_eq!(m.code, 0);
    assert_eq!(m.stdout, "{\"mad\":\"5/2\",\"witness\":[0,1,2,3,4,5,6,7,8,9,10,11]}\n");
}

#[test]
fn k33_has_no_partition() {
    let k33 = fixture("k33.g6", "EFz_\n");
    let r = ifpart(&["analyze", "partition", "--graph", &k33], b"");
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("{\"sat\":false"), "{}", r.stdout);
}

#[test]
fn partition_of_a_path() {
    let r = ifpart(&["analyze", "partition", "--format", "edges"], b"0 1\n1 2\n");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["sat"], true);
    let sides = v["I"].as_array().unwrap().len() + v["F"].as_array().unwrap().len();
    assert_eq!(sides, 3);
}

#[test]
fn exact_star_chromatic_number_of_p4() {
    let p4 = fixture("p4.edges", "0 1\n1 2\n2 3\n");
    let r = ifpart(&["analyze", "starcolor", "--graph", &p4, "--exact"], b"");
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "{\"colors\":[2,1,2,3],\"k\":3,\"method\":\"exact\"}\n");
}

#[test]
fn exact_star_coloring_respects_cap() {
    let r = ifpart(&["analyze", "starcolor", "--exact", "--cap", "3", "--format", "edges"], b"0 1\n1 2\n2 3\n");
    assert_eq!(r.code, 3);
}

#[test]
fn potential_reports_minimum_and_positivity() {
    let assign = fixture("tri.assign", "0 I\n1 I\n");
    let r = ifpart(&["analyze", "potential", "--format", "edges", "--assign", &assign], b"0 1\n1 2\n2 0\n");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    // Whole triangle: 1 + 1 + 5 - 4·3.
    assert_eq!(v["min"], -5);
    assert_eq!(v["all_positive"], false);
}

#[test]
fn gadgetize_output_is_reingestible() {
    let assign = fixture("edge.assign", "0 F\n1 I\n");
    let g = ifpart(&["analyze", "gadgetize", "--format", "edges", "--assign", &assign], b"0 1\n");
    assert_eq!(g.code, 0);
    let p = ifpart(&["analyze", "partition"], g.stdout.as_bytes());
    assert_eq!(p.code, 0);
    let v: serde_json::Value = serde_json::from_str(&p.stdout).unwrap();
    assert_eq!(v["I"].as_array().unwrap().len() + v["F"].as_array().unwrap().len(), 2 + 3 + 8);
}

#[test]
fn discharge_on_petersen_holds() {
    let r = ifpart(&["analyze", "discharge"], b"IheA@GUAo\n");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["audit"]["verdict"], "holds");
    assert_eq!(v["configurations"].as_array().unwrap().len(), 0);
}

#[test]
fn low_potential_check_lists_five_configurations() {
    let r = ifpart(&["check", "--theorem", "claim4"], b"");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["failures"], 0);
    assert_eq!(v["notes"].as_array().unwrap().len(), 5);
}

#[test]
fn mad_partition_check_passes() {
    let r = ifpart(&["check", "--theorem", "mad-partition", "--n", "9", "--samples", "500", "--seed", "1"], b"");
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn discharging_check_passes() {
    let r = ifpart(&["check", "--theorem", "lemma8", "--n", "12", "--samples", "500", "--seed", "7"], b"");
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn check_output_is_deterministic() {
    let args = ["check", "--theorem", "oracle-mad", "--n", "8", "--samples", "40", "--seed", "3"];
    let a = ifpart(&args, b"");
    let b = ifpart(&args, b"");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_is_deterministic() {
    let args = ["generate", "--model", "gnm", "--n", "5", "--m", "4", "--seed", "42"];
    let a = ifpart(&args, b"");
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, ifpart(&args, b"").stdout);
    let e = ifpart(&["analyze", "mad"], a.stdout.as_bytes());
    assert_eq!(e.code, 0);
}

#[test]
fn sparse_generator_edge_window() {
    let r = ifpart(
        &["generate", "--model", "sparse_near_threshold", "--n", "20", "--target", "5/2", "--seed", "1", "--format", "edges"],
        b"",
    );
    assert_eq!(r.code, 0);
    let edges = r.stdout.lines().filter(|l| !l.starts_with('#')).count();
    assert!((23..=27).contains(&edges), "{edges}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ifpart(&["generate", "--model", "gnm", "--n", "4", "--m", "7"], b"").code, 2);
    assert_eq!(ifpart(&["check", "--theorem", "no-such-theorem"], b"").code, 2);
    assert_eq!(ifpart(&["analyze", "mad"], b"not graph6\n").code, 2);
    assert_eq!(ifpart(&["analyze", "potential", "--format", "edges"], b"0 0\n").code, 2);
    assert_eq!(ifpart(&["analyze", "frobnicate"], b"").code, 2);
    assert_eq!(ifpart(&["analyze", "sharpness", "--k", "2"], b"").code, 2);
}

#[test]
fn report_file_records_the_run() {
    let report = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("run-report.json");
    let r = ifpart(&["--report", report.to_str().unwrap(), "analyze", "mad"], b"Bw\n");
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["outcome"]["mad"], "2");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
}
