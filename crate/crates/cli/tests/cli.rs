use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbijac")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn projective_plane_dims() {
    let (code, out) = run(&["chow", "--p", "1,1,1", "--w", "1,1,1"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let dims: Vec<_> = doc["dims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["dim"] != 0)
        .map(|d| (d["degree"].as_str().unwrap().to_owned(), d["dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, [("0/1".into(), 1), ("1/1".into(), 1), ("2/1".into(), 1)]);
}

#[test]
fn generator_check_exits_cleanly() {
    assert_eq!(run(&["verify", "--suite", "lemma31", "--p", "2,3", "--bound", "5"]).0, 0);
}

#[test]
fn bad_input_exits_with_one() {
    assert_eq!(run(&["chow", "--p", "0,1"]).0, 1);
    assert_eq!(run(&["chow", "--p", "2,4"]).0, 1);
    assert_eq!(run(&["fibration", "--p", "2,3", "--chain"]).0, 1);
    assert_eq!(run(&["chow", "--nope"]).0, 1);
    assert_eq!(run(&["export", "/nonexistent.json"]).0, 1);
}

#[test]
fn help_exits_with_zero() {
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn export_rerenders_stored_output() {
    let dir = std::env::temp_dir().join(format!("orbijac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fib.json");
    let path = path.to_str().unwrap();
    assert_eq!(run(&["fibration", "--p", "1,2,4", "--out", path]).0, 0);
    let (code, singular) = run(&["export", path, "--format", "singular"]);
    assert_eq!(code, 0);
    assert_eq!(singular, run(&["fibration", "--p", "1,2,4", "--format", "singular"]).1);
    std::fs::remove_dir_all(&dir).unwrap();
}
