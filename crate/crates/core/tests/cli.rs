//! Black-box tests of the `idealcore` binary: exit codes, report shape,
//! re-parseable ideals and a golden JSON report.

use std::path::{Path, PathBuf};
use std::process::Command;

use idealcore::ideal_ops::{ideal_power, maximal_ideal_power};
use idealcore::{Field, Ideal, RingContext};
use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_idealcore")).args(args).output().expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap_or(-1),
    }
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--output", "json", "--no-timings"];
    full.extend_from_slice(args);
    let r = run(&full);
    (serde_json::from_str(&r.stdout).unwrap_or(Value::Null), r.code)
}

fn write_ideal(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

/// Parses a JSON array of generator strings back into an ideal.
fn ideal_from(v: &Value, vars: &[&str], field: Field) -> Ideal {
    let ring = RingContext::standard(vars, field);
    let gens: Vec<&str> = v.as_array().expect("ideal array").iter().map(|g| g.as_str().unwrap()).collect();
    Ideal::parse(&ring, &gens).expect("printed ideal re-parses")
}

#[test]
fn gb_of_the_paper_ideal() {
    let r = run(&["gb", "--ring", "x,y,z,w", "--order", "degrevlex", &data("ideal_I.txt")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines = r.stdout.lines().count();
    assert!((1..=23).contains(&lines), "{lines} basis elements");
}

#[test]
fn gb_of_a_single_variable() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_ideal(&dir, "x.txt", "x\n");
    let r = run(&["gb", f.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "x\n");
}

#[test]
fn gb_lex_differs_but_reparses() {
    let (v, code) = json(&["--order", "lex", "gb", &data("ideal_I.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["ring"]["order"], "lex");
    let basis = &v["result"]["basis"];
    let ring = RingContext::standard(&["x", "y", "z", "w"], Field::Rational).with_order(idealcore::MonomialOrder::Lex);
    for g in basis.as_array().unwrap() {
        idealcore::ring::parse_polynomial(g.as_str().unwrap(), &ring).unwrap();
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_ideal(&dir, "empty.txt", "# only a comment\n\n");
    let bad = write_ideal(&dir, "bad.txt", "x^2+\n");
    let unknown = write_ideal(&dir, "unknown.txt", "x*q\n");
    for args in [
        vec!["gb", empty.to_str().unwrap()],
        vec!["gb", bad.to_str().unwrap()],
        vec!["gb", unknown.to_str().unwrap()],
        vec!["gb", "/no/such/file"],
        vec!["--char", "12", "gb", empty.to_str().unwrap()],
        vec!["frobnicate"],
        vec!["check-conjecture", "3", "3", "1"],
        vec!["check-conjecture", "3", "1", "2", "--paper-forms"],
        vec!["deeper-core", empty.to_str().unwrap()],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        assert!(!r.stderr.is_empty());
    }
    let r = run(&["gb", bad.to_str().unwrap()]);
    assert!(r.stderr.contains("bad.txt:1") && r.stderr.contains("position"), "{}", r.stderr);
}

#[test]
fn non_primary_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_ideal(&dir, "line.txt", "x\ny\n");
    let r = run(&["core", f.to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stderr);
    assert!(r.stderr.contains("m-primary"));
}

#[test]
fn reduction_cap_is_a_limit() {
    let r = run(&["--char", "32003", "--max-reduction-number", "0", "core", &data("ideal_I.txt")]);
    assert_eq!(r.code, 3, "{}", r.stderr);
    let r = run(&[
        "--char",
        "32003",
        "--max-reduction-number",
        "0",
        "core",
        "--reduction-file",
        &data("reduction_J.txt"),
        &data("ideal_I.txt"),
    ]);
    assert_eq!(r.code, 3, "{}", r.stderr);
}

#[test]
fn core_with_the_explicit_reduction() {
    let (v, code) = json(&["core", "--reduction-file", &data("reduction_J.txt"), &data("ideal_I.txt")]);
    assert_eq!(code, 0);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "ring", "input_ideals", "result", "checks", "seed", "version"]);
    assert_eq!(v["command"], "core");
    assert_eq!(v["ring"]["vars"], serde_json::json!(["x", "y", "z", "w"]));
    assert_eq!(v["ring"]["char"], 0);
    assert_eq!(v["result"]["samples"][0]["certificate"]["reduction_number"], 1);
    let vars = ["x", "y", "z", "w"];
    let i = ideal_from(&v["input_ideals"]["I"], &vars, Field::Rational);
    let core = ideal_from(&v["result"]["core"], &vars, Field::Rational);
    assert!(core.equals(&ideal_power(&i, 2)).unwrap());
    let basis = ideal_from(&v["result"]["core_basis"], &vars, Field::Rational);
    assert!(basis.equals(&core).unwrap());
    for (name, check) in v["checks"].as_object().unwrap() {
        assert_eq!(check["status"], "pass", "{name}");
    }
}

#[test]
fn core_of_small_maximal_ideals() {
    let r = run(&["--ring", "x,y,z", "core", &data("m3vars.txt")]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("core = (x, y, z)"), "{}", r.stdout);
    let (v, code) = json(&["--char", "32003", "--samples", "2", "core", &data("m2.txt")]);
    assert_eq!(code, 0);
    let field = Field::prime(32003).unwrap();
    let core = ideal_from(&v["result"]["core"], &["x", "y", "z", "w"], field);
    assert!(core.equals(&maximal_ideal_power(core.ring(), 5)).unwrap());
    assert_eq!(v["result"]["field_note"], "mod-p surrogate");
}

#[test]
fn verify_counterexample_over_both_fields() {
    let r = run(&["verify-counterexample"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("PASS")).count(), 6);
    let r = run(&["--char", "32003", "verify-counterexample"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("mod-p surrogate"));
}

#[test]
fn tampered_reduction_fails_with_bases() {
    let r = run(&["--char", "32003", "verify-counterexample", "--tamper-reduction"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("first failing check: reduction-j"), "{}", r.stdout);
    assert!(r.stdout.contains("left basis:") && r.stdout.contains("right basis:"));
    let (v, code) = json(&["--char", "32003", "verify-counterexample", "--tamper-reduction"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["first_failure"], "reduction-j");
    assert_eq!(v["checks"]["reduction-j"]["status"], "fail");
    assert_eq!(v["checks"]["i-squared-not-in-m5"]["status"], "pass");
}

#[test]
fn tamper_hook_is_hidden() {
    let r = run(&["verify-counterexample", "--help"]);
    assert_eq!(r.code, 0);
    assert!(!r.stdout.contains("tamper"));
}

#[test]
fn conjecture_reports() {
    let (v, code) = json(&["check-conjecture", "2", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "EQUAL");
    assert_eq!(v["result"]["theorem_backed"], true);
    let (v, code) = json(&["--seed", "3", "check-conjecture", "3", "2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["instance"]["params"]["a"], 0);
    assert_eq!(v["result"]["instance"]["params"]["b"], 1);
    assert_eq!(v["result"]["verdict"], "EQUAL");
    let vars = ["x", "y", "z"];
    let conj = ideal_from(&v["result"]["conjectured"], &vars, Field::Rational);
    let core = ideal_from(&v["result"]["core"]["core"], &vars, Field::Rational);
    assert!(conj.equals(&core).unwrap());
    let (v, code) = json(&["check-conjecture", "4", "3", "2", "--paper-forms"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "EQUAL");
    assert_eq!(v["result"]["instance"]["source"]["kind"], "paper-forms");
    assert_eq!(v["result"]["theorem_backed"], false);
}

#[test]
fn deeper_core_over_the_square_of_m() {
    let (v, code) = json(&["--char", "32003", "--samples", "1", "deeper-core", &data("ideal_I.txt"), &data("m2.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["strictly_inside_core"], true);
    let field = Field::prime(32003).unwrap();
    let vars = ["x", "y", "z", "w"];
    let inter = ideal_from(&v["result"]["intersection"], &vars, field);
    let i = ideal_from(&v["input_ideals"]["I"], &vars, field);
    let square = ideal_power(&i, 2);
    assert!(square.contains(&inter).unwrap() && !inter.contains(&square).unwrap());
    assert!(maximal_ideal_power(i.ring(), 5).contains(&inter).unwrap());
}

#[test]
fn deeper_core_of_itself_is_the_core() {
    let (v, code) = json(&["--char", "32003", "--samples", "1", "deeper-core", &data("ideal_I.txt"), &data("ideal_I.txt")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["strictly_inside_core"], false);
}

#[test]
fn deeper_core_names_the_offending_file() {
    let dir = tempfile::tempdir().unwrap();
    let small = write_ideal(&dir, "small.txt", "x^3\ny^3\nz^3\nw^3\n");
    let r = run(&["--char", "32003", "deeper-core", &data("ideal_I.txt"), small.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("small.txt"), "{}", r.stderr);
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["--output", "json", "--no-timings", "--seed", "9", "--char", "32003", "core", &data("ideal_I.txt")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.contains("elapsed_ms"));
    let timed = run(&["--output", "json", "--seed", "9", "--char", "32003", "core", &data("ideal_I.txt")]);
    assert!(timed.stdout.contains("elapsed_ms"));
}

#[test]
fn golden_verification_report() {
    let (v, code) = json(&["--char", "32003", "verify-counterexample"]);
    assert_eq!(code, 0);
    let rendered = serde_json::to_string_pretty(&v).unwrap() + "\n";
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/verify_counterexample_mod_p.json");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden.parent().unwrap()).unwrap();
        std::fs::write(&golden, &rendered).unwrap();
    }
    let expected = std::fs::read_to_string(&golden).expect("golden file; regenerate with UPDATE_GOLDEN=1");
    assert_eq!(rendered, expected);
}
