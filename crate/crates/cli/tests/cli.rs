use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_polyreplay"));
    for (k, _) in std::env::vars() {
        if k.starts_with("POLYREPLAY_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_case3_succeeds() {
    let o = run(&["verify", "--pipeline", "case3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: ForcesConstancy"));
}

#[test]
fn verify_lemma41_at_unit_multiplicities() {
    let o = run(&["verify", "--pipeline", "lemma4_1", "--multiplicities", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn zero_multiplicity_is_a_usage_error() {
    let o = run(&["verify", "--pipeline", "case1A", "--multiplicities", "0,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid profile"));
}

#[test]
fn unknown_pipeline_and_bad_flags_exit_2() {
    assert_eq!(run(&["verify", "--pipeline", "case9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--pipeline", "case3", "--budget-secs", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--pipeline", "case3", "--curvature", "x/"]).status.code(), Some(2));
}

#[test]
fn term_guard_aborts_with_exit_3() {
    let o = run(&["verify", "--pipeline", "lemma4_1", "--max-terms", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("term-count guard"));
}

#[test]
fn resultant_examples() {
    let o = run(&["resultant", "x-a", "x-b", "x"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "a - b");
    assert_eq!(stdout(&run(&["resultant", "x^2-1", "x^2-4", "x"])).trim(), "9");
    assert_eq!(stdout(&run(&["resultant", "2*x-2*a", "x-b", "x", "--primitive"])).trim(), "a - b");
    assert_eq!(stdout(&run(&["resultant", "x-b", "x-a", "x", "--raw"])).trim(), "b - a");
}

#[test]
fn resultant_errors_exit_2() {
    assert_eq!(run(&["resultant", "x-", "x", "x"]).status.code(), Some(2));
    let o = run(&["resultant", "a", "b", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("constant in `x`"));
}

#[test]
fn resultant_of_generic_quintic_and_quadratic_matches_fixture() {
    let o = run(&[
        "resultant",
        "v0 + v1*lam_v + v2*lam_v^2 + v3*lam_v^3 + v4*lam_v^4 + v5*lam_v^5",
        "v6 + v7*lam_v + v8*lam_v^2",
        "lam_v",
    ]);
    let file = include_str!("../../core/data/fixtures.json");
    let json: serde_json::Value = serde_json::from_str(file).unwrap();
    assert_eq!(stdout(&o).trim(), json["fixtures"]["c1.generic_resultant"].as_str().unwrap());
}

#[test]
fn saved_report_renders_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let raw = dir.path().join("raw.json");
    let out = dir.path().join("stable.json");
    let o = run(&[
        "verify",
        "--pipeline",
        "lemma4_1,case3",
        "--format",
        "json",
        "--save-raw",
        raw.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&run(&["report", raw.to_str().unwrap()]));
    assert!(text.contains("== lemma4_1"));
    assert!(text.contains("side conditions:"));
    assert!(text.contains(" ms)"));
    let json = stdout(&run(&["report", "--format", "json", raw.to_str().unwrap()]));
    assert_eq!(json, std::fs::read_to_string(&out).unwrap());
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(run(&["report", dir.path().join("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let a = run(&["verify", "--pipeline", "lemma4_2a,lemma4_2b,case3", "--format", "json", "--workers", "1"]);
    let b = run(&["verify", "--pipeline", "lemma4_2a,lemma4_2b,case3", "--format", "json", "--workers", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn environment_overrides_flags_defaults() {
    let o = bin()
        .args(["verify", "--pipeline", "case3", "--format", "json"])
        .env("POLYREPLAY_SEED", "99")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 99);
}

#[test]
fn config_file_drives_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"pipelines": ["case2"], "profiles": [{"multiplicities": [2], "n": 5, "c": 0, "beta": 7}], "output": "json", "seed": 3}"#,
    )
    .unwrap();
    let o = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["runs"][0]["profile"], "Three(n=5,p=2; c=0, beta=7)");
    assert_eq!(v["seed"], 3);
    std::fs::write(&cfg, r#"{"pipelines": []}"#).unwrap();
    assert_eq!(run(&["verify", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn fixture_file_is_canonical() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures.json");
    let o = run(&["fixtures", "canonicalize", "--check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn canonicalize_rewrites_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fx.json");
    std::fs::write(
        &path,
        r#"{"schema": 1, "symbols": ["lam1", "c"], "fixtures": {"t.one": "-2*c - 2*lam1^2"}, "errata": {}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(run(&["fixtures", "canonicalize", "--check", p]).status.code(), Some(1));
    assert_eq!(run(&["fixtures", "canonicalize", "--write", p]).status.code(), Some(0));
    assert_eq!(run(&["fixtures", "canonicalize", "--check", p]).status.code(), Some(0));
}

#[test]
fn injected_fixture_mismatch_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fx.json");
    let file = include_str!("../../core/data/fixtures.json");
    let mut json: serde_json::Value = serde_json::from_str(file).unwrap();
    json["fixtures"]["c3.norm"] = serde_json::Value::String("lam1^2 + lam^2 - beta".into());
    std::fs::write(&path, serde_json::to_string(&json).unwrap()).unwrap();
    let o = run(&["verify", "--pipeline", "case3", "--fixtures", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Mismatch"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAILED case3"));
}
