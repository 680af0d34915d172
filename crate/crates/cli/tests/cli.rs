use std::path::PathBuf;
use std::process::{Command, Output};

fn path(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_examples() {
    let o = run(&["validate", &path("corpus/cd3.pres")]);
    assert_eq!(stdout(&o).trim(), "valid, order 32, type {4,4}");
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["validate", &path("corpus/t128.pres")]);
    assert_eq!(stdout(&o).trim(), "valid, order 128, type {4,4}");

    let o = run(&["validate", &path("fixtures/string_violation.pres")]);
    assert!(stdout(&o).starts_with("invalid: string condition"));
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["validate", &path("fixtures/degenerate.pres")]);
    assert_eq!(stdout(&o).trim(), "valid, order 64, type {4,2,4}, degenerate");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", &path("fixtures/malformed.pres")]).status.code(), Some(2));
    assert_eq!(run(&["validate", &path("fixtures/absent.pres")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["--max-cosets", "2000", "validate", &path("fixtures/infinite.pres")]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["--element-cap", "16", "polytope", &path("corpus/cd3.pres")]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(run(&["cd", "--rank", "1", "--verify"]).status.code(), Some(2));
}

#[test]
fn theorem_check_files() {
    let o = run(&["theorem-check", &path("corpus/t128.pres")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("overall: pass"));

    let o = run(&["theorem-check", &path("fixtures/degenerate.pres")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL (hypothesis)"));

    for d in 2..=3 {
        let o = run(&["--json", "theorem-check", &path(&format!("corpus/cd{d}.pres"))]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["overall"], true);
        let c = v["assertions"].as_array().unwrap().iter().find(|a| a["name"] == "|C|").unwrap();
        assert_eq!(c["observed"], "1");
    }
}

#[test]
fn corpus_reports_are_ordered_and_deterministic() {
    let a = run(&["--json", "theorem-check", "--corpus"]);
    let b = run(&["--json", "theorem-check", "--corpus"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let ids: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["group_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(ids.len(), 13);
}

#[test]
fn covers_examples() {
    let o = run(&["covers", &path("corpus/t128.pres"), "--against-cd"]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("true", Some(0)));
    let o = run(&["covers", &path("corpus/cd3.pres"), &path("corpus/t128.pres")]);
    assert_eq!((stdout(&o).trim(), o.status.code()), ("false", Some(1)));
    let sq = path("fixtures/square.pres");
    assert_eq!(stdout(&run(&["covers", &sq, &sq])).trim(), "true");
}

#[test]
fn polytope_examples() {
    let cd3 = path("corpus/cd3.pres");
    assert_eq!(stdout(&run(&["polytope", &cd3, "--counts"])).trim(), "counts 4,8,4");
    let dot = stdout(&run(&["polytope", &cd3, "--dot"]));
    assert_eq!(dot.lines().filter(|l| l.ends_with(';') && !l.contains("--")).count(), 32);
    assert_eq!(dot, stdout(&run(&["polytope", &cd3, "--dot"])));
    let sq = path("fixtures/square.pres");
    assert_eq!(stdout(&run(&["polytope", &sq, "--diamond"])).trim(), "diamond true");
    let o = run(&["--json", "polytope", &cd3, "--flat", "0", "2", "--sections", "--flag-connected"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["flat"]["flat"], true);
    assert_eq!(v["sections"], serde_json::json!([32]));
    assert_eq!(v["flag_connected"], true);
}

#[test]
fn cd_examples() {
    let o = run(&["cd", "--rank", "3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("overall: pass"));
    let o = run(&["cd", "--rank", "2", "--emit-presentation"]);
    assert!(stdout(&o).contains("gens r0 r1\n"));
    let o = run(&["--json", "cd", "--rank", "6", "--verify"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "2048");
    assert_eq!(v["overall"], true);
}
