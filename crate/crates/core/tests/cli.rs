use std::process::Command;

fn goodstein(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_goodstein")).args(args).env_remove("GOODSTEIN_MAX_BITS").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn normal_form_and_ordinal() {
    assert_eq!(goodstein(&["nf", "--m", "100", "--k", "3", "--part", "1"]), (0, "A_2(3,0)+61\n".into()));
    assert_eq!(goodstein(&["ord", "--m", "39", "--k", "3", "--map", "psi", "--part", "1"]), (0, "w^(w)\n".into()));
    assert_eq!(goodstein(&["bc", "--m", "12", "--op", "first"]), (0, "16\n".into()));
    assert_eq!(goodstein(&["seed", "--r", "1"]), (0, "39\n".into()));
}

#[test]
fn trace_file_matches_stdout_json() {
    let dir = std::env::temp_dir().join(format!("goodstein-trace-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let (code, text) = goodstein(&["--json", "run", "--m", "4", "--trace", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file.trim(), text.trim());
    let v: serde_json::Value = serde_json::from_str(&file).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["part", "seed", "status", "steps", "variant"]);
    assert_eq!(v["status"], "zero");
    assert_eq!(v["steps"].as_array().unwrap().len(), 6);
    let step = &v["steps"][0];
    for key in ["l", "k", "value", "nf", "ordinal", "descent_ok"] {
        assert!(step.get(key).is_some(), "missing {key}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn environment_budget_and_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_goodstein")).args(["run", "--m", "39"]).env("GOODSTEIN_MAX_BITS", "12").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_goodstein"))
        .args(["run", "--m", "39", "--max-steps", "20", "--max-bits", "4096"])
        .env("GOODSTEIN_MAX_BITS", "12")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_reports() {
    let (code, text) = goodstein(&["--json", "check", "--suite", "S3", "--m-max", "200", "--k-min", "3", "--k-max", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["cases"], 200);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(goodstein(&["check", "--suite", "S99"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "run", "--m", "6", "--variant", "second", "--part", "2"];
    assert_eq!(goodstein(&args), goodstein(&args));
}
