use std::process::Command;

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaussforge"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("gaussforge runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).trim().to_string(),
        String::from_utf8_lossy(&out.stderr).trim().to_string(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args, &[]);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn bounds_and_schema() {
    let (code, out, _) = run(&["bounds", "--t", "1", "--m", "1"], &[]);
    assert_eq!(code, 0);
    assert_eq!(out, "lower 2\nupper 6");
    let doc = json(&["--json", "bounds", "--t", "2", "--m", "1"]);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["lower"], 3);
    assert_eq!(doc["upper"], 40);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["frobnicate"], &[]).0, 1);
    assert_eq!(run(&["bounds", "--t", "1", "--m", "1", "--bogus"], &[]).0, 1);
    assert_eq!(run(&["parse", "/nonexistent/file.gd"], &[]).0, 1);
    assert_eq!(run(&["--help"], &[]).0, 0);
}

#[test]
fn malformed_input_exits_one() {
    let dir = std::env::temp_dir().join(format!("gaussforge-commands-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.gd");
    std::fs::write(&bad, "1T+ 1Q+").unwrap();
    let (code, _, err) = run(&["parse", bad.to_str().unwrap()], &[]);
    assert_eq!(code, 1);
    assert!(err.contains("malformed token"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_and_environment() {
    let dir = std::env::temp_dir().join(format!("gaussforge-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let conf = dir.join("run.conf");
    std::fs::write(&conf, "m = inf\nmax_degree = 2\n").unwrap();
    let conf = conf.to_str().unwrap();
    let (_, out, _) = run(&["--config", conf, "conway", "stock:cinquefoil"], &[]);
    assert_eq!(out, "1 + 3*z^2");
    let (_, out, _) = run(&["--config", conf, "conway", "stock:cinquefoil"], &[("GAUSSFORGE_MAX_DEGREE", "4")]);
    assert_eq!(out, "1 + 3*z^2 + 1*z^4");
    let (_, out, _) = run(&["--config", conf, "conway", "--max-degree", "0", "stock:cinquefoil"], &[]);
    assert_eq!(out, "1");
    let (code, _, _) = run(&["conway", "stock:trefoil"], &[("GAUSSFORGE_MAX_GENERATORS", "0")]);
    assert_eq!(code, 1);
    let (code, _, err) = run(&["rank", "--t", "2", "--m", "1"], &[("GAUSSFORGE_MAX_GENERATORS", "100")]);
    assert_eq!(code, 1);
    assert!(err.contains("budget"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fuzz_is_reproducible() {
    let args = ["--json", "fuzz", "--invariant", "theta", "--m", "2", "--spec", "1@1", "--walks", "2", "--steps", "50"];
    let first = run(&args, &[]);
    assert_eq!(first.0, 0);
    assert_eq!(first, run(&args, &[]));
    let doc: Value = serde_json::from_str(&first.1).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["walks"], 10);
}

#[test]
fn non_invariants_exit_two() {
    // The labelled diagram itself changes under moves.
    let (code, _, _) = run(&["fuzz", "--invariant", "labels", "--steps", "20", "--walks", "1", "stock:trefoil"], &[]);
    assert_eq!(code, 2);
}

#[test]
fn degree_check_reports() {
    let doc = json(&["--json", "degree-check", "--invariant", "c2n", "--m", "2", "--order", "2", "stock:cinquefoil"]);
    assert_eq!(doc["bounded"], true);
    assert!(doc["witness"].is_object());
    let (code, _, _) = run(&["degree-check", "--invariant", "c2n", "--m", "2", "--order", "1", "stock:cinquefoil"], &[]);
    assert_eq!(code, 2);
}

#[test]
fn generate_round_trips_through_parse() {
    let (_, text, _) = run(&["generate", "--family", "dmk", "--params", "m=2,k=2"], &[]);
    let dir = std::env::temp_dir().join(format!("gaussforge-generate-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("d22.gd");
    std::fs::write(&file, &text).unwrap();
    let doc = json(&["--json", "parse", file.to_str().unwrap()]);
    assert_eq!(doc["arrows"], 8);
    assert_eq!(doc["text"], text);
    assert_eq!(run(&["generate", "--family", "dmk", "--params", "m=2"], &[]).0, 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
