use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chebycycle"))
        .args(args)
        .env_remove("CHEBY_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chebycycle-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn eval_fixed_points() {
    let o = run(&["eval", "--n", "19", "--p", "2", "--k", "5", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
    let o = run(&["eval", "--n", "19", "--p", "3", "--k", "5", "--x", "0"]);
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn eval_iterates() {
    let once = |x: &str| stdout(&run(&["eval", "--n", "19", "--p", "2", "--k", "7", "--x", x]));
    let first = once("3");
    let second = once(first.trim());
    let o = run(&["eval", "--n", "19", "--p", "2", "--k", "7", "--x", "3", "--iters", "2"]);
    assert_eq!(stdout(&o), second);
}

#[test]
fn eval_usage_errors() {
    assert_eq!(run(&["eval", "--n", "4", "--p", "2", "--k", "3", "--x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--n", "19", "--p", "2", "--k", "3", "--x", "8"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--n", "19", "--p", "5", "--k", "3", "--x", "1"]).status.code(), Some(2));
    let o = run(&["eval", "--n", "4", "--p", "2", "--k", "3", "--x", "1", "--allow-any"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn period_all_histogram() {
    let o = run(&["period", "--n", "19", "--p", "2", "--k", "5", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1 + 32 + 1);
    assert_eq!(out.lines().last().unwrap(), "# cycles {1:20, 2:2, 4:2}");
}

#[test]
fn period_single_and_oracle() {
    assert_eq!(stdout(&run(&["period", "--n", "19", "--p", "3", "--k", "5", "--x", "1"])), "1\n");
    let o = run(&["period", "--n", "19", "--p", "3", "--k", "5", "--x", "5", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("AGREE"));
    let o = run(&["period", "--n", "19", "--p", "3", "--k", "4", "--all", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("DISAGREE"));
}

#[test]
fn graph_json_spectrum() {
    let o = run(&["graph", "--n", "19", "--p", "2", "--k", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let compact: String = stdout(&o).split_whitespace().collect();
    assert!(compact.contains(
        r#""spectrum":[{"length":1,"count":20},{"length":2,"count":2},{"length":4,"count":2}]"#
    ));
    assert!(compact.contains(r#""covered":32"#));
}

#[test]
fn graph_dot_self_loops() {
    let o = run(&["graph", "--n", "19", "--p", "2", "--k", "3", "--format", "dot"]);
    let out = stdout(&o);
    let loops = out
        .lines()
        .filter_map(|l| l.trim().trim_end_matches(';').split_once(" -> "))
        .filter(|(a, b)| a == b)
        .count();
    assert_eq!(loops, 8);
    let again = run(&["graph", "--n", "19", "--p", "2", "--k", "3", "--format", "dot"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn graph_to_file_and_cap() {
    let path = scratch("g.dot", "");
    let o = run(&["graph", "--n", "19", "--p", "3", "--k", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&path).unwrap().matches("->").count(), 9);

    let o = Command::new(env!("CARGO_BIN_EXE_chebycycle"))
        .args(["graph", "--n", "19", "--p", "2", "--k", "8"])
        .env("CHEBY_MAX_STATES", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["graph", "--n", "19", "--p", "2", "--k", "8", "--max-states", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_worked_rings() {
    let o = run(&["verify", "--n", "19", "--p", "2", "--k", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n=19 p=2 k=7 MATCH"));
    let o = run(&["verify", "--n", "19", "--p", "3", "--k", "5", "--workers", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("MATCH"));
}

#[test]
fn verify_csv() {
    let o = run(&["verify", "--n", "19", "--p", "3", "--k", "5", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("class,length,predicted,observed,match"));
    assert!(out.lines().any(|l| l == "pm1,9,6,6,true"));
    assert!(out.lines().any(|l| l == "zero,18,3,3,true"));
}

#[test]
fn verify_rejects_non_permutation() {
    assert_eq!(run(&["verify", "--n", "9", "--p", "3", "--k", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "19", "--p", "2"]).status.code(), Some(2));
}

#[test]
fn sweep_small() {
    let cfg = scratch("small.cfg", "# small\ndegrees=3..31\np2_k=1..8\np3_k=1..5\nworkers=2\n");
    let o = run(&["verify", "--sweep", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().next().unwrap().starts_with("n=3 p=2 k=1 MATCH"));
    assert!(out.trim_end().ends_with("match, 0 mismatch, 0 error"));
}

#[test]
fn sweep_output_directory() {
    let dir = std::env::temp_dir().join(format!("chebycycle-cli-out-{}", std::process::id()));
    let cfg = scratch("out.cfg", &format!("degrees=19\np3_k=5\nout={}\n", dir.display()));
    let o = run(&["verify", "--sweep", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("verify_n19_p3_k5.csv")).unwrap();
    assert!(csv.starts_with("class,length,predicted,observed,match\n"));
}

#[test]
fn sweep_is_deterministic_across_workers() {
    let a = scratch("w1.cfg", "degrees=3..41\np2_k=1..9\np3_k=1..5\nworkers=1\n");
    let b = scratch("w4.cfg", "degrees=3..41\np2_k=1..9\np3_k=1..5\nworkers=4\n");
    assert_eq!(
        run(&["verify", "--sweep", a.to_str().unwrap()]).stdout,
        run(&["verify", "--sweep", b.to_str().unwrap()]).stdout
    );
}

#[test]
fn sweep_parse_errors() {
    let cfg = scratch("bad.cfg", "degrees=3..199\np2_k=1..14\nflavour=mint\n");
    let o = run(&["verify", "--sweep", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown key"));
    assert_eq!(run(&["verify", "--sweep", "/nonexistent/x.cfg"]).status.code(), Some(2));
}

#[test]
fn default_config_sweep_passes() {
    let cfg = concat!(env!("CARGO_MANIFEST_DIR"), "/../../default.cfg");
    let o = run(&["verify", "--sweep", cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("# 1914 tuples: 1914 match, 0 mismatch, 0 error"));
}

#[test]
fn selfloops_listing() {
    let o = run(&["selfloops", "--n", "19", "--k", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().last(), Some("# count 36"));
    assert_eq!(out.lines().count(), 37);
    let o = run(&["selfloops", "--n", "19", "--k", "2"]);
    assert_eq!(stdout(&o), "1\n2\n4\n5\n7\n8\n# count 6\n");
    assert_eq!(run(&["selfloops", "--n", "9", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn selfloops_match_graph_fixed_points() {
    let listed: Vec<u64> = stdout(&run(&["selfloops", "--n", "7", "--k", "6"]))
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.parse().unwrap())
        .collect();
    let dot = stdout(&run(&["graph", "--n", "7", "--p", "3", "--k", "6"]));
    let fixed: Vec<u64> = dot
        .lines()
        .filter_map(|l| l.trim().trim_end_matches(';').split_once(" -> "))
        .filter(|(a, b)| a == b)
        .map(|(a, _)| a.parse().unwrap())
        .filter(|x: &u64| !x.is_multiple_of(3))
        .collect();
    assert_eq!(listed, fixed);
}
