use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Scratch {
    dir: TempDir,
}

impl Scratch {
    fn new() -> Self {
        Scratch {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }
}

fn divrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_divrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn run_ok(args: &[&str]) -> Value {
    let out = divrel(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

fn totals(v: &Value) -> Vec<u64> {
    v["total"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

const SINGLE: &str = r#"{"q":4,"relations":[[1,[2,3]]]}"#;
const SIX: &str = r#"{"q":6,"relations":[[1,[2,3]],[2,[4,5]],[5,[4,6]]]}"#;
const THREE: &str = r#"{"q":5,"relations":[[1,[2,3]],[3,[1,5]],[3,[4,5]]]}"#;
const PATH: &str = r#"{"variables":["a","b","c","d","e"],"generators":[[0,1,1,0,0],[1,1,0,0,0],[0,0,1,1,0],[0,0,0,1,1]]}"#;

#[test]
fn extremal_document_matches_expected_generators() {
    let s = Scratch::new();
    let d = s.file("d.json", SINGLE);
    let v = run_ok(&["extremal", d.to_str().unwrap()]);
    let vars: Vec<&str> = v["variables"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(vars.len(), 13);
    assert!(!vars.contains(&"y_1") && !vars.contains(&"y_14"));
    assert_eq!(vars[0], "y_2");
    assert_eq!(vars[12], "y_1234");
    let gens = v["generators"].as_array().unwrap();
    assert_eq!(gens.len(), 4);
    // ε_1 is the product of y_A over A containing 1 and not {1} or {1,4}.
    let e1: Vec<&str> = vars
        .iter()
        .zip(gens[0].as_array().unwrap())
        .filter(|(_, e)| e.as_u64() == Some(1))
        .map(|(n, _)| *n)
        .collect();
    assert_eq!(e1, ["y_12", "y_13", "y_123", "y_124", "y_134", "y_1234"]);
}

#[test]
fn extremal_output_round_trips_through_betti() {
    let s = Scratch::new();
    let d = s.file("d.json", SINGLE);
    let out = divrel(&["extremal", d.to_str().unwrap()]);
    let e = s.file("e.json", std::str::from_utf8(&out.stdout).unwrap());
    let v = run_ok(&["betti", e.to_str().unwrap()]);
    assert_eq!(totals(&v), [4, 5, 2]);
    let v = run_ok(&["betti", e.to_str().unwrap(), "--power", "2"]);
    assert_eq!(totals(&v), [10, 21, 15, 3]);
    assert_eq!(v["power"], 2);
    let v = run_ok(&["betti", e.to_str().unwrap(), "--field", "2"]);
    assert_eq!(v["field"], "GF(2)");
    assert_eq!(totals(&v), [4, 5, 2]);
}

#[test]
fn closure_and_membership() {
    let s = Scratch::new();
    let d = s.file("six.json", SIX);
    let fast = run_ok(&["closure", d.to_str().unwrap()]);
    let naive = run_ok(&["closure", d.to_str().unwrap(), "--naive"]);
    assert_eq!(fast, naive);
    assert_eq!(fast["relations"].as_array().unwrap().len(), 6);
    let m = run_ok(&["closure", d.to_str().unwrap(), "--member", "1", "3,4,6"]);
    assert_eq!(m["member"], true);
    let m = run_ok(&["closure", d.to_str().unwrap(), "--member", "1", "3,4"]);
    assert_eq!(m["member"], false);
}

#[test]
fn decide_gives_witness_and_derivation() {
    let s = Scratch::new();
    let d = s.file("three.json", THREE);
    let p = d.to_str().unwrap();
    let no = run_ok(&["decide", p, "1", "2,4", "--tree"]);
    assert_eq!(no["member"], false);
    assert_eq!(no["certificate"]["kind"], "witness");
    assert!(no["tree_text"].is_string());
    let yes = run_ok(&["decide", p, "1", "2,4,5"]);
    assert_eq!(yes["member"], true);
    assert_eq!(yes["certificate"]["kind"], "derivation");
    assert_eq!(yes["certificate"]["result"], serde_json::json!([1, [2, 4, 5]]));
    let t = run_ok(&["decide", p, "2", "2,3"]);
    assert_eq!(t["certificate"]["kind"], "trivial");
}

#[test]
fn relations_of_an_ideal_in_both_formats() {
    let s = Scratch::new();
    let j = s.file("path.json", PATH);
    let m = s.file("path.txt", "variables: a b c d e\nb*c\na*b\nc*d\nd*e\n");
    let a = run_ok(&["relations", j.to_str().unwrap(), "--mingen"]);
    let b = run_ok(&["--format", "monomials", "relations", m.to_str().unwrap(), "--mingen"]);
    assert_eq!(a, b);
    assert_eq!(a["q"], 4);
    assert!(a["relations"].as_array().unwrap().contains(&serde_json::json!([1, [2, 3]])));
}

#[test]
fn bounds_report_passes_for_satisfied_relations() {
    let s = Scratch::new();
    let i = s.file("i.json", PATH);
    let d = s.file("d.json", SINGLE);
    let v = run_ok(&["bounds", i.to_str().unwrap(), d.to_str().unwrap(), "--power", "2"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["extremal"], serde_json::json!([10, 21, 15, 3]));
}

#[test]
fn verify_random_corpus_is_deterministic() {
    let a = divrel(&["--seed", "5", "verify", "--random", "4"]);
    let b = divrel(&["--seed", "5", "verify", "--random", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["instances"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_flags_unsatisfied_relations() {
    let s = Scratch::new();
    let i = s.file("i.json", PATH);
    let d = s.file("d.json", r#"{"q":4,"relations":[[4,[1,2]]]}"#);
    let out = divrel(&["verify", "--ideal", i.to_str().unwrap(), "--relations", d.to_str().unwrap(), "--suite", "psi"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["passed"], false);
}

#[test]
fn error_exit_codes() {
    let s = Scratch::new();
    let bad = s.file("bad.json", r#"{"q":4,"relations":[[1,[2,3]]"#);
    let out = divrel(&["closure", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["status"], "error");
    assert!(v["message"].as_str().unwrap().contains("line 1"));

    let d = s.file("d.json", SINGLE);
    let e = s.file("e.json", std::str::from_utf8(&divrel(&["extremal", d.to_str().unwrap()]).stdout).unwrap());
    let out = divrel(&["betti", e.to_str().unwrap(), "--field", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = divrel(&["--cap-faces", "3", "betti", e.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["kind"], "cap_exceeded");

    let out = divrel(&["extremal", s.dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_stable_pretty_json() {
    let s = Scratch::new();
    let d = s.file("d.json", SINGLE);
    let out = divrel(&["closure", d.to_str().unwrap()]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\n  \"q\": 4,\n  \"relations\": [[1, [2, 3]]]\n}\n"
    );
}
