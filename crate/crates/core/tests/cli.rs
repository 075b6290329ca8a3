use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde_json::Value;

fn corpus_file(name: &str) -> String {
    format!("{}/corpus/{name}.ring", env!("CARGO_MANIFEST_DIR"))
}

fn fthresh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fthresh")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_ring(text: &str) -> PathBuf {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let path = std::env::temp_dir().join(format!(
        "fthresh-cli-{}-{}.ring",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::write(&path, text).unwrap();
    path
}

fn schema() -> jsonschema::JSONSchema {
    let schema: Value = serde_json::from_str(include_str!("../../../docs/report.schema.json")).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(json: &Value) {
    let schema = schema();
    let msgs: Vec<String> = match schema.validate(json) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("report does not match the schema: {msgs:#?}\n{json:#}");
}

#[test]
fn verify_squarefree_passes() {
    for p in [2, 3, 5, 7] {
        let out = fthresh(&["verify", &corpus_file(&format!("squarefree3_p{p}")), "--emax", "2"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(!stdout(&out).contains("FAIL"));
        assert!(stdout(&out).contains("[pass] expected sdim"));
    }
}

#[test]
fn fpt_json_for_quadric() {
    let out = fthresh(&["fpt", &corpus_file("quadric5"), "--emax", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&v);
    let lower: Vec<Value> = v["fpt"]["levels"].as_array().unwrap().iter().map(|l| l["fptLower"].clone()).collect();
    assert_eq!(lower, vec![serde_json::json!({"num": 4, "den": 5}), serde_json::json!({"num": 24, "den": 25})]);
    assert_eq!(v["fpt"]["gorensteinExact"], serde_json::json!({"num": 1, "den": 1}));
}

#[test]
fn nonreduced_is_not_f_pure() {
    let out = fthresh(&["check", &corpus_file("nonreduced")]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("not F-pure"));
}

#[test]
fn parse_errors_exit_two_with_position() {
    let path = temp_ring("p = 4\nvars = x y\ngens:\nx*y\n");
    let out = fthresh(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));

    let path = temp_ring("p = 5\nvars = x y\ngens:\nx^2 + y\n");
    let out = fthresh(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4") && stderr(&out).contains("homogeneous"), "{}", stderr(&out));

    let path = temp_ring("p = 5\nvars = x y\ngens:\nx^2 + y*\n");
    let out = fthresh(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4, column"), "{}", stderr(&out));

    let out = fthresh(&["check", "/nonexistent/ring/file.ring"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_four() {
    let out = fthresh(&["nu", &corpus_file("poly3"), "--budget", "5"]);
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
}

#[test]
fn preconditions_exit_three() {
    let out = fthresh(&["compatible", &corpus_file("squarefree3_p3"), "--ideal", "x+y"]);
    assert_eq!(out.status.code(), Some(3));
    let out = fthresh(&["verify", &corpus_file("xy2"), "--corpus"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compatible_ideals_of_the_squarefree_ring() {
    let out = fthresh(&["compatible", &corpus_file("squarefree3_p3"), "--ideal", "x,y"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches(": compatible").count(), 2);
}

#[test]
fn every_command_emits_schema_valid_json() {
    let commands: &[&[&str]] = &[
        &["check"],
        &["fpt"],
        &["nu"],
        &["ainv"],
        &["betti"],
        &["splitting"],
        &["sequence"],
        &["verify"],
        &["compatible", "--ideal", "x,y"],
    ];
    for ring in ["squarefree3_p2", "quadric5", "twoplanes", "poly2"] {
        for cmd in commands {
            let file = corpus_file(ring);
            let mut args = vec![cmd[0], file.as_str(), "--json"];
            args.extend_from_slice(&cmd[1..]);
            let out = fthresh(&args);
            if cmd[0] == "sequence" && ["squarefree3_p2", "twoplanes"].contains(&ring) {
                // Sequences are only built over Gorenstein rings.
                assert_eq!(out.status.code(), Some(3), "{ring}");
                continue;
            }
            assert!(out.status.success(), "{ring} {cmd:?}: {}", stderr(&out));
            let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
            assert_valid(&v);
        }
    }
}

#[test]
fn corpus_verification_is_ordered_and_valid() {
    let out = fthresh(&["verify", "--corpus", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_valid(&v);
    let names: Vec<&str> = v["corpus"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    let expected: Vec<&str> = fthresh::cli::CORPUS.iter().map(|(n, _)| *n).collect();
    assert_eq!(names, expected);
}

#[test]
fn lex_order_gives_the_same_invariants() {
    for ring in ["quadric5", "twoplanes"] {
        let grevlex = fthresh(&["ainv", &corpus_file(ring)]);
        let lex = fthresh(&["ainv", &corpus_file(ring), "--order", "lex"]);
        assert_eq!(stdout(&grevlex), stdout(&lex));
    }
}

#[test]
fn builtin_corpus_names_resolve() {
    let out = fthresh(&["betti", "corpus:twoplanes"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pd = 3"));
}
