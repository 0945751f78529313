use std::process::{Command, Output};

fn arcade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcade")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn games_lists_all_twenty_four() {
    let o = arcade(&["games"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 25, "header plus one line per game");
}

#[test]
fn validate_accepts_builtins_and_rejects_typos() {
    assert!(arcade(&["validate", "breakout"]).status.success());
    let o = arcade(&["validate", "pongg"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"pong\""));
}

#[test]
fn validate_reports_a_bad_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let o = arcade(&["validate", path.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(stdout(&o).starts_with("error:"));
}

#[test]
fn rollout_record_holds_one_header_and_end_per_episode() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("run.ndjson");
    let o = arcade(&["rollout", "freeway_easy", "--policy", "crosser", "--episodes", "3", "--record", rec.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("mean score 100.00 over 3 episodes"));
    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&rec)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let count = |t: &str| lines.iter().filter(|l| l["type"] == t).count();
    assert_eq!((count("header"), count("episode_end")), (3, 3));
    assert_eq!(count("step"), lines.len() - 6);
}

#[test]
fn incompatible_policy_is_an_error() {
    let o = arcade(&["rollout", "hedge_maze", "--policy", "paddle_tracker"]);
    assert!(!o.status.success());
}

#[test]
fn frames_dump_writes_one_file() {
    let dir = tempfile::tempdir().unwrap();
    let o = arcade(&["frames", "pong", "--steps", "5", "--format", "dump", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let bytes = std::fs::read(dir.path().join("frames.arcf")).unwrap();
    assert_eq!(&bytes[..4], b"ARCF");
}

#[test]
fn trace_is_stable_across_runs() {
    let args = ["trace", "pong", "avalanche", "--seeds", "2", "--steps", "50"];
    let a = stdout(&arcade(&args));
    assert_eq!(a.lines().count(), 4);
    assert_eq!(a, stdout(&arcade(&args)));
}
