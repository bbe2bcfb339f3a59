use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn leadsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leadsim"))
        .args(args)
        .output()
        .expect("spawn leadsim")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn run_writes_series() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "iterations = 100\nbroadcast_enabled = true\n");
    let out = dir.path().join("s.csv");
    let o = leadsim(&["run", "--config", &cfg, "--seed", "5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 102);
    assert_eq!(
        lines[0],
        "iteration,mean_fitness,diversity,best_fitness,leader_action_share"
    );
    assert_eq!(lines[1], "0,0.000000,1,0.000000,1.000000");
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "seed = 1\nfollower_p_invent = 0.3\n");
    let cfg2 = write(dir.path(), "c2.txt", "seed = 2\nfollower_p_invent = 0.3\n");
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(leadsim(&["run", "--config", &cfg, "--seed", "2", "--out", a.to_str().unwrap()])
        .status
        .success());
    assert!(leadsim(&["run", "--config", &cfg2, "--out", b.to_str().unwrap()])
        .status
        .success());
    assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
}

#[test]
fn run_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "iterations = 2\n");
    let o = leadsim(&["run", "--config", &cfg, "--out", "-"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 4);
}

#[test]
fn bad_config_is_one_line_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "seed = 1\nleader_p_invent = 1.5\n");
    let o = leadsim(&["run", "--config", &cfg, "--out", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with("error: "));
    assert!(err.contains("line 2") && err.contains("leader_p_invent"), "{err}");
}

#[test]
fn usage_errors_are_one_line() {
    let o = leadsim(&["run", "--out", "-"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr(&o).lines().count(), 1);
    let o = leadsim(&["preset", "e9", "--replicates", "1", "--seed0", "0", "--out-dir", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: usage:"));
}

#[test]
fn sweep_writes_long_format() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "iterations = 20\n");
    let out = dir.path().join("sw.csv");
    let o = leadsim(&[
        "sweep",
        "--config",
        &cfg,
        "--axes",
        "leader_p_invent=0,1;broadcast_enabled=false,true",
        "--replicates",
        "3",
        "--seed0",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "leader_p_invent,broadcast_enabled,seed,final_mean_fitness,final_diversity,convergence_iteration"
    );
    assert_eq!(lines.len(), 13);
    assert!(lines[1].starts_with("0,false,100,"));
    assert!(lines[4].starts_with("0,true,103,"));
    assert!(lines[12].starts_with("1,true,111,"));
}

#[test]
fn sweep_cap_and_bad_axes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "");
    let o = leadsim(&[
        "sweep", "--config", &cfg, "--axes", "alpha=0.1,0.2", "--replicates", "10", "--seed0",
        "0", "--out", "-", "--max-runs", "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds the cap"), "{}", stderr(&o));

    let o = leadsim(&[
        "sweep", "--config", &cfg, "--axes", "nope=1", "--replicates", "1", "--seed0", "0",
        "--out", "-",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nope"));
}

#[test]
fn sim_threads_must_be_positive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.txt", "iterations = 2\n");
    let o = Command::new(env!("CARGO_BIN_EXE_leadsim"))
        .args(["sweep", "--config", &cfg, "--axes", "alpha=0.5", "--replicates", "1"])
        .args(["--seed0", "0", "--out", "-"])
        .env("SIM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("SIM_THREADS"));
}

#[test]
fn preset_writes_runs_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = Command::new(env!("CARGO_BIN_EXE_leadsim"))
        .args(["preset", "e1", "--replicates", "3", "--seed0", "7", "--out-dir"])
        .arg(&out)
        .env("SIM_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let runs = fs::read_to_string(out.join("e1.csv")).unwrap();
    assert_eq!(runs.lines().count(), 7);
    assert!(runs.starts_with("broadcast_enabled,seed,"));
    let summary = fs::read_to_string(out.join("e1_summary.csv")).unwrap();
    let rows: Vec<&str> = summary.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("false,3,"));
    assert!(rows[2].starts_with("true,3,"));
}

#[test]
fn oracle_dump_has_729_rows() {
    let o = leadsim(&["oracle-fitness", "--out", "-"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 730);
    assert!(text.contains("\n364,0,0,0,0,0,0,0.000000\n"));
}
