use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

const FIXTURE: &str = "8 8\n6 3\n7 2\n1 5\n5 6\n6 3\n3 4\n4 8\n8 7\n";
const FIXTURE_SOLUTION: &str = r#"{"start":[1,2,3,4,5,6,7,8],"blocks":[[[2,4,7],[4,5,8]],[],[],[],[],[],[],[]]}"#;

fn slbc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slbc")).args(args).env_remove("SLBC_STATE_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn verify_reports_cost() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "fixture.txt", FIXTURE);
    let sol = write(&dir, "sol.json", FIXTURE_SOLUTION);
    let o = slbc(&["verify", "--in", &inst, "--sol", &sol]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "cost=2\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "fixture.txt", FIXTURE);
    let bad = write(&dir, "bad.json", r#"{"start":[1,2,3,4,5,6,7,8],"blocks":[[],[],[],[],[],[],[],[]]}"#);
    assert_eq!(slbc(&["verify", "--in", &inst, "--sol", &bad]).status.code(), Some(1));
    assert_eq!(slbc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(slbc(&["solve", "--in", &inst]).status.code(), Some(2));
    assert_eq!(slbc(&["solve", "--in", &inst, "--algo", "bfs", "--start", "best"]).status.code(), Some(2));
    assert_eq!(slbc(&["bench", "--k", "4", "--n", "3", "--variants", "nope"]).status.code(), Some(2));
    assert_eq!(slbc(&["--help"]).status.code(), Some(0));
    let garbled = write(&dir, "garbled.txt", "3 2\n1 2\n2 x\n");
    let o = slbc(&["check", "--in", &garbled]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3, field 2"));
}

#[test]
fn fixed_start_solve_matches_fixture() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "fixture.txt", FIXTURE);
    let out = path(&dir, "sol.json");
    for algo in ["bfs", "iddfs"] {
        let o = slbc(&["solve", "--in", &inst, "--algo", algo, "--start", "identity", "--out", &out]);
        assert!(o.status.success(), "{algo}");
        let v = slbc(&["verify", "--in", &inst, "--sol", &out]);
        assert_eq!(stdout(&v), "cost=2\n", "{algo}");
    }
}

#[test]
fn generate_solve_verify_render() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "inst.json");
    assert!(slbc(&["gen", "random", "--k", "5", "--n", "9", "--seed", "4", "--out", &inst]).status.success());
    let text = slbc(&["gen", "random", "--k", "5", "--n", "9", "--seed", "4", "--text"]);
    assert!(stdout(&text).starts_with("5 9\n"));
    let mut costs = Vec::new();
    for algo in ["bfs", "iddfs", "greedy", "approx"] {
        let sol = path(&dir, &format!("{algo}.json"));
        assert!(slbc(&["solve", "--in", &inst, "--algo", algo, "--out", &sol]).status.success(), "{algo}");
        let v = stdout(&slbc(&["verify", "--in", &inst, "--sol", &sol]));
        costs.push(v.trim().strip_prefix("cost=").unwrap().parse::<usize>().unwrap());
    }
    assert_eq!(costs[0], costs[1]);
    assert!(costs[2] >= costs[0] && costs[3] >= costs[0]);

    let svg = path(&dir, "d.svg");
    let o = slbc(&["render", "--in", &inst, "--sol", &path(&dir, "bfs.json"), "--svg", &svg, "--ascii"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with('s'));
    let drawing = fs::read_to_string(&svg).unwrap();
    assert!(drawing.contains("<svg") && drawing.trim_end().ends_with("</svg>"));

    let o = slbc(&["solve", "--in", &inst, "--algo", "bfs", "--stats"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("{\"start\""));
    let stats: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(stats["beta"].as_u64().unwrap() as usize, costs[0]);
}

#[test]
fn reduction_instance_solves_to_distance() {
    let dir = TempDir::new().unwrap();
    let inst = path(&dir, "sbt.txt");
    assert!(slbc(&["gen", "sbt", "--perm", "3,2,1", "--text", "--out", &inst]).status.success());
    let sol = path(&dir, "sol.json");
    assert!(slbc(&["solve", "--in", &inst, "--algo", "bfs", "--out", &sol]).status.success());
    assert_eq!(stdout(&slbc(&["verify", "--in", &inst, "--sol", &sol])), "cost=2\n");
}

#[test]
fn ihed_round_trip() {
    let dir = TempDir::new().unwrap();
    let h = write(&dir, "h.json", r#"{"k":4,"edges":[[1,2],[2,3],[3,4],[1,4]]}"#);
    let o = slbc(&["ihed", "--in", &h]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["paid"].as_array().unwrap().len(), 1);
    assert_eq!(v["witness"].as_array().unwrap().len(), 4);
    let o = slbc(&["ihed", "--in", &h, "--brute"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["paid"].as_array().unwrap().len(), 1);
    let inst = write(&dir, "fixture.txt", FIXTURE);
    assert!(slbc(&["ihed", "--in", &inst]).status.success());
}

#[test]
fn check_prints_witness_or_fails() {
    let dir = TempDir::new().unwrap();
    let path_like = write(&dir, "p.txt", "4 3\n1 2\n2 3 4\n3 4\n");
    let o = slbc(&["check", "--in", &path_like]);
    assert!(o.status.success());
    let order: Vec<u32> = serde_json::from_str(stdout(&o).trim()).unwrap();
    let pos = |c: u32| order.iter().position(|&x| x == c).unwrap() as i64;
    assert_eq!((pos(1) - pos(2)).abs(), 1);
    assert_eq!((pos(3) - pos(4)).abs(), 1);
    let triangle = write(&dir, "t.txt", "3 3\n1 2\n2 3\n1 3\n");
    assert_eq!(slbc(&["check", "--in", &triangle]).status.code(), Some(1));
}

#[test]
fn bench_is_reproducible() {
    let args = ["bench", "--k", "5", "--n", "10", "--instances", "6", "--seed", "11", "--variants", "random,heuristic,best,exact"];
    let a = slbc(&args);
    let b = slbc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("instance_id,seed,k,n,random_cost,heuristic_cost,best_cost,exact_cost\n"));
    assert_eq!(text.lines().count(), 7);
    let hist = stdout(&slbc(&["bench", "--mode", "all-starts", "--k", "4", "--n", "12", "--seed", "1"]));
    let total: usize = hist.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 24);
    let rt = stdout(&slbc(&["bench", "--mode", "runtime", "--k", "4", "--n", "5,10", "--instances", "2"]));
    assert_eq!(rt.lines().count(), 5);
}

#[test]
fn state_budget_variable_limits_search() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "fixture.txt", FIXTURE);
    let o = Command::new(env!("CARGO_BIN_EXE_slbc"))
        .args(["solve", "--in", &inst, "--algo", "bfs"])
        .env("SLBC_STATE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("state"));
}
