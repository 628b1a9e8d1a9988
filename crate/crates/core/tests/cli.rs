use serde_json::Value;
use std::process::{Command, Output};

fn threefold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threefold")).current_dir(env!("CARGO_MANIFEST_DIR")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--json", "-"]);
    let out = threefold(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // The human summary precedes the JSON document.
    serde_json::from_str(&stdout[stdout.find("\n{").map_or(0, |i| i + 1)..]).unwrap()
}

#[test]
fn same_seed_same_report() {
    let args = ["analyze", "@fixtures/f2.txt", "--seed", "7", "--commands", "singular,defect,hodge,surfaces"];
    let a = json(&args);
    assert_eq!(a, json(&args));
    assert_eq!(a["seed"], 7);
    assert_eq!(a["defect"]["result"]["sigma"], 1);
    assert_eq!(a["hodge"]["result"]["h3"], 5);
}

#[test]
fn smooth_cubic_has_no_defect() {
    let r = json(&["analyze", "@fixtures/fermat.txt", "--commands", "defect", "--seed", "1"]);
    let d = &r["defect"]["result"];
    assert!(d["sigma"].is_null());
    assert!(d["note"].as_str().unwrap().contains("no singular points"));
}

#[test]
fn segre_cubic() {
    let r = json(&["analyze", "@fixtures/segre.txt", "--commands", "singular,defect", "--seed", "3"]);
    assert_eq!(r["singular"]["result"]["count"], 10);
    assert_eq!(r["defect"]["result"]["sigma"], 5);
    assert!(r.get("hodge").is_none());
}

#[test]
fn seed_is_echoed_when_drawn() {
    let out = threefold(&["analyze", "@fixtures/node1.txt", "--commands", "singular"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).lines().any(|l| l.starts_with("seed ")));
}

#[test]
fn overrides_reach_the_settings() {
    let dir = std::env::temp_dir().join(format!("threefold-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.toml");
    std::fs::write(&cfg, "seed = 12\n[tracker]\nmax_step = 0.05\n").unwrap();
    let r = json(&["analyze", "@fixtures/node1.txt", "--commands", "singular", "--config", cfg.to_str().unwrap(), "--tol", "min_step=1e-10"]);
    assert_eq!(r["seed"], 12);
    assert_eq!(r["settings"]["max_step"], 0.05);
    assert_eq!(r["settings"]["min_step"], 1e-10);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_2() {
    let parse = threefold(&["analyze", "x0^3 + x1^^2"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains('^'));
    assert_eq!(threefold(&["analyze", "x0^3", "--bogus"]).status.code(), Some(2));
    assert_eq!(threefold(&["analyze", "@fixtures/node1.txt", "--commands", "singular,nope"]).status.code(), Some(2));
    assert_eq!(threefold(&["analyze", "@fixtures/node1.txt", "--tol", "no_such_key=1"]).status.code(), Some(2));
}

#[test]
fn line_not_on_the_cubic_exits_3() {
    let out = threefold(&["lines", "x0^3 + x1^3 + x2^3 + x3^3 + x4^3", "--through", "1,0,0,0,0;0,1,0,0,0", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn line_through_two_points() {
    let r = json(&["lines", "x0^3 + x1^3 + x2^3 + x3^3 + x4^3", "--through", "1,-1,0,0,0;0,0,1,-1,0", "--seed", "1"]);
    assert_eq!(r["lines"]["status"], "ok");
    let v = &r["lines"]["result"]["verdict"];
    assert_eq!(v["good"]["good"], "no");
    assert_eq!(r["lines"]["result"]["discriminant_singularities"].as_array().unwrap().len(), 7);
}
