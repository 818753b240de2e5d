use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpoisson"))
        .args(args)
        .output()
        .expect("run dpoisson")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = run(&[&["--format", "json"], args].concat());
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), v)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn valid_bracket_exits_zero() {
    let out = run(&["check", "--bracket", &corpus("alpha_family.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for check in ["PASS skew", "PASS leibniz", "PASS jacobi"] {
        assert!(text.contains(check), "{text}");
    }
}

#[test]
fn jacobi_failure_exits_one_with_residuals() {
    let (code, v) = json(&["check", "--bracket", &corpus("gamma_only.json")]);
    assert_eq!(code, 1);
    let checks = v["checks"].as_array().unwrap();
    let jac = checks.iter().find(|c| c["name"] == "jacobi").unwrap();
    assert_eq!(jac["pass"], false);
    assert!(!v["result"]["residuals"].as_array().unwrap().is_empty());
}

#[test]
fn relation_makes_the_family_pass() {
    let file = corpus("a2_family.json");
    assert_eq!(run(&["check", "--bracket", &file]).status.code(), Some(1));
    let out = run(&[
        "check",
        "--bracket",
        &file,
        "--relation",
        "gamma^2 + alpha*beta",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn skew_failure_is_reported() {
    let out = run(&["check", "--bracket", &corpus("broken_skew.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL skew"));
}

#[test]
fn modified_family_passes_modified_checks() {
    let (code, v) = json(&["check", "--bracket", &corpus("mdpb_family.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["flat_bracket"]["zero"], true);
    assert_eq!(
        v["result"]["flat_bracket"]["basis"]
            .as_array()
            .unwrap()
            .len(),
        2
    );
}

#[test]
fn zero_bracket_is_poisson() {
    assert_eq!(
        run(&["check", "--bracket", &corpus("zero.json")])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(
        run(&["check", "--bracket", "/nonexistent/bracket.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "--algebra", "octonions"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["inner", "--algebra", "a2"]).status.code(), Some(2));
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn large_algebra_needs_force() {
    let out = run(&["solve", "--algebra", "mat3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force-large"));
    assert_eq!(run(&["hh1", "--algebra", "mat3"]).status.code(), Some(2));
}

#[test]
fn solve_a2_reports_family() {
    let (code, v) = json(&["solve", "--algebra", "a2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["nullspace_dim"], 3);
    assert_eq!(v["result"]["reference_family"]["matches"], true);
    assert_eq!(
        v["result"]["reference_family"]["constraints"],
        serde_json::json!(["alpha*beta + gamma^2"])
    );
}

#[test]
fn solve_modified_reports_extra_direction() {
    let (_, v) = json(&["solve", "--algebra", "a2", "--modified"]);
    let r = &v["result"];
    assert_eq!(r["nullspace_dim"], 8);
    assert_eq!(r["reference_family"]["contained"], true);
    assert_eq!(r["reference_family"]["extra_direction_in_solution"], true);
}

#[test]
fn inner_wedge_and_scan() {
    let (code, v) = json(&[
        "inner",
        "--algebra",
        "a2",
        "--wedge",
        &corpus("e0_wedge_e1.json"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["brackets"]["{{e0,e1}}"], "e0⊗e0");
    assert_eq!(v["result"]["aybe_holds"], true);
    let (code, v) = json(&["inner", "--algebra", "a2", "--aybe-scan"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["params"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn induce_with_charts() {
    let file = corpus("alpha_family.json");
    let (code, v) = json(&[
        "induce",
        "--bracket",
        &file,
        "--n",
        "2",
        "--chart",
        "rep2-a2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["chart"]["mode"], "exact");
    let (code, v) = json(&[
        "induce",
        "--bracket",
        &file,
        "--n",
        "3",
        "--chart",
        "rep3-a2",
        "--samples",
        "20",
    ]);
    assert_eq!(code, 0);
    assert!(v["result"]["chart"]["frame"]
        .as_str()
        .unwrap()
        .starts_with("standard"));
    let out = run(&["induce", "--bracket", &file, "--n", "2", "--chart", "rep9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "induce",
        "--bracket",
        &file,
        "--n",
        "3",
        "--chart",
        "rep2-a2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hh1_reports_dimensions() {
    let (code, v) = json(&["hh1", "--algebra", "mat2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim_outer"], 0);
    assert_eq!(v["result"]["spans_equal"], true);
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "induce",
        "--bracket",
        &corpus("alpha_family.json"),
        "--n",
        "3",
        "--chart",
        "rep3-a2",
        "--seed",
        "11",
    ];
    let a = run(&[&["--format", "json"], &args[..]].concat());
    let b = run(&[&["--format", "json"], &args[..]].concat());
    assert_eq!(a.stdout, b.stdout);
    let (_, v) = json(&args);
    assert_eq!(v["result"]["chart"]["seed"], 11);
    assert_eq!(v["inputs"]["bracket"].as_str().unwrap().len(), 64);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("dpoisson-out-{}.json", std::process::id()));
    let out = run(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "solve",
        "--algebra",
        "a2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["nullspace_dim"], 3);
    let _ = std::fs::remove_file(path);
}

#[test]
fn algebra_file_is_resolved_next_to_bracket() {
    let dir = std::env::temp_dir().join(format!("dpoisson-alg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let alg = r#"{"name": "k", "basis": ["u"], "unit": ["1"], "mul": [[0, 0, 0, "1"]]}"#;
    std::fs::write(dir.join("k.json"), alg).unwrap();
    std::fs::write(dir.join("b.json"), r#"{"algebra": "k.json", "coeffs": []}"#).unwrap();
    let out = run(&["check", "--bracket", dir.join("b.json").to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let _ = std::fs::remove_dir_all(dir);
}
