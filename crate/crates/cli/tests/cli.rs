use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn vc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vc")).args(args).output().expect("vc runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(TempDir::new().unwrap())
    }

    fn file(&self, name: &str, contents: &str) -> String {
        let path = self.path(name);
        fs::write(&path, contents).unwrap();
        path.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn gen(&self, name: &str, args: &[&str]) -> String {
        let path = self.path(name);
        let p = path.to_str().unwrap();
        let mut full = vec!["gen"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--output", p]);
        assert_eq!(code(&vc(&full)), 0);
        p.to_string()
    }
}

fn run(path: &str) -> Value {
    json(&vc(&["run", "--input", path, "--json"]))
}

#[test]
fn run_on_k2() {
    let d = Dir::new();
    let r = run(&d.file("k2.el", "2\n0 1\n"));
    assert_eq!(r["cover_size"], 2);
    assert_eq!(r["lower_bound"], 1);
    assert_eq!(r["certified_ratio"], "2/1");
    assert_eq!(r["rounds_run"], 3);
    assert_eq!(r["last_active_step"], 2);
    assert_eq!(r["oracle_size"], 1);
    assert_eq!(r["true_ratio"], "2/1");
    assert_eq!(r["cover"], serde_json::json!([0, 1]));
    let checks = r["checks"].as_object().unwrap();
    assert_eq!(checks.len(), 9);
    assert!(checks.values().all(|v| v == "pass"));
}

#[test]
fn run_on_star() {
    let d = Dir::new();
    let r = run(&d.gen("star.el", &["star", "3"]));
    assert_eq!(r["cover_size"], 2);
    assert_eq!(r["lower_bound"], 1);
    assert_eq!(r["certified_ratio"], "2/1");
    assert_eq!(r["true_ratio"], "2/1");
    assert_eq!(r["cover"], serde_json::json!([0, 1]));
}

#[test]
fn run_on_empty_graphs() {
    let d = Dir::new();
    for (name, text) in [("none.el", "0\n"), ("isolated.el", "4\n"), ("none.pg", "0 0\n")] {
        let r = run(&d.file(name, text));
        assert_eq!(r["cover_size"], 0);
        assert_eq!(r["certified_ratio"], Value::Null);
        assert_eq!(r["rounds_run"], 1);
        assert!(r["checks"].as_object().unwrap().values().all(|v| v == "pass"));
    }
}

#[test]
fn run_is_byte_identical() {
    let d = Dir::new();
    let g = d.gen("r.el", &["random", "60", "5", "0.2", "--seed", "3"]);
    let args = ["run", "--input", &g, "--numbering", "random", "--seed", "9", "--json"];
    assert_eq!(vc(&args).stdout, vc(&args).stdout);
}

#[test]
fn port_graph_input_keeps_its_ports() {
    let d = Dir::new();
    // every node's port 1 leads clockwise
    let c4 = d.file("c4.pg", "4 4\n0 2 1 3\n1 2 2 0\n2 2 3 1\n3 2 0 2\n");
    let r = run(&c4);
    assert_eq!(r["cover"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(r["oracle_size"], 2);
    assert_eq!(r["true_ratio"], "2/1");
}

#[test]
fn trace_round_trips_through_verify() {
    let d = Dir::new();
    let g = d.gen("r.pg", &["random", "30", "4", "0.2", "--seed", "11", "--format", "pg"]);
    let trace = d.path("r.trace");
    let trace = trace.to_str().unwrap();
    assert_eq!(code(&vc(&["run", "--input", &g, "--trace", trace])), 0);
    let v = json(&vc(&["verify", "--input", &g, "--trace", trace, "--json"]));
    assert_eq!(v["consistent"], true);

    let text = fs::read_to_string(trace).unwrap();
    let corrupted = text.replacen("ACCEPT", "REJECT", 1);
    assert_ne!(text, corrupted);
    fs::write(trace, corrupted).unwrap();
    let out = vc(&["verify", "--input", &g, "--trace", trace, "--json"]);
    assert_eq!(code(&out), 3);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["consistent"], false);
    assert!(!v["divergences"].as_array().unwrap().is_empty());
}

#[test]
fn gen_families() {
    let d = Dir::new();
    let cycle = fs::read_to_string(d.gen("c6.el", &["cycle", "6"])).unwrap();
    assert_eq!(cycle, "6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n");
    let star = fs::read_to_string(d.gen("s5.el", &["star", "5"])).unwrap();
    assert_eq!(star.lines().count(), 6);
    assert!(star.lines().skip(1).all(|l| l.starts_with("0 ")));

    let random = d.gen("r.el", &["random", "20", "4", "0.3", "--seed", "7"]);
    let text = fs::read_to_string(&random).unwrap();
    let mut degree = [0usize; 20];
    for line in text.lines().skip(1) {
        for v in line.split_whitespace() {
            degree[v.parse::<usize>().unwrap()] += 1;
        }
    }
    assert!(degree.iter().all(|&x| x <= 4));
    let again = vc(&["gen", "random", "20", "4", "0.3", "--seed", "7"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);
}

#[test]
fn oracle_examples() {
    let d = Dir::new();
    for (args, expected) in [(&["cycle", "5"][..], 3), (&["star", "7"], 1), (&["path", "2"], 1)] {
        let g = d.gen("g.el", args);
        let r = json(&vc(&["oracle", "--input", &g, "--json"]));
        assert_eq!(r["optimum_size"], expected, "{args:?}");
        assert_eq!(r["cover"].as_array().unwrap().len(), expected);
    }
}

#[test]
fn sweep_k2_has_no_freedom() {
    let d = Dir::new();
    let k2 = d.file("k2.el", "2\n0 1\n");
    let lines = json_lines(&vc(&["sweep", "--input", &k2, "--trials", "10", "--seed", "1", "--json"]));
    assert_eq!(lines.len(), 11);
    assert!(lines[..10].iter().all(|t| t["cover_size"] == 2));
    for (i, t) in lines[..10].iter().enumerate() {
        assert_eq!(t["trial"], i);
    }
    assert_eq!(lines[10]["record"], "summary");
    assert_eq!(lines[10]["mean_cover_size"], "2/1");
}

#[test]
fn sweep_star_covers_centre_and_one_leaf() {
    let d = Dir::new();
    let star = d.gen("s5.el", &["star", "5"]);
    let out = vc(&["sweep", "--input", &star, "--trials", "50", "--seed", "2", "--json"]);
    assert_eq!(code(&out), 0);
    let lines = json_lines(&out);
    let mut leaves = BTreeSet::new();
    for t in &lines[..50] {
        assert_eq!(t["cover_size"], 2);
        assert_eq!(t["cover"][0], 0);
        assert_eq!(t["true_ratio"], "2/1");
        leaves.insert(t["cover"][1].as_u64().unwrap());
    }
    assert!(leaves.len() > 1, "covered leaf never varied");
}

#[test]
fn sweep_random_stays_within_three() {
    let d = Dir::new();
    let g = d.gen("r.el", &["random", "16", "4", "0.4", "--seed", "5"]);
    let args = ["sweep", "--input", &g, "--trials", "100", "--seed", "3", "--json"];
    let out = vc(&args);
    assert_eq!(code(&out), 0);
    let summary = json_lines(&out).pop().unwrap();
    let max = summary["max_certified_ratio"].as_str().unwrap();
    let (n, d) = max.split_once('/').unwrap();
    assert!(n.parse::<u64>().unwrap() <= 3 * d.parse::<u64>().unwrap());
    assert_eq!(summary["failed_trials"], 0);
    assert_eq!(vc(&args).stdout, out.stdout);
}

#[test]
fn sweep_trial_reproduces_with_run() {
    let d = Dir::new();
    let g = d.gen("r.el", &["random", "40", "5", "0.2", "--seed", "8"]);
    let lines = json_lines(&vc(&["sweep", "--input", &g, "--trials", "4", "--json"]));
    for t in &lines[..4] {
        let seed = t["seed"].to_string();
        let r = json(&vc(&["run", "--input", &g, "--numbering", "random", "--seed", &seed, "--json"]));
        assert_eq!(r["cover"], t["cover"]);
    }
}

#[test]
fn exit_codes() {
    let d = Dir::new();
    let k2 = d.file("k2.el", "2\n0 1\n");
    assert_eq!(code(&vc(&[])), 1);
    assert_eq!(code(&vc(&["run"])), 1);
    assert_eq!(code(&vc(&["run", "--input", &k2, "--bogus"])), 1);
    assert_eq!(code(&vc(&["run", "--input", &k2, "--numbering", "random"])), 1);
    assert_eq!(code(&vc(&["run", "--input", &d.file("k2.txt", "2\n0 1\n")])), 1);
    assert_eq!(code(&vc(&["gen", "cycle", "2"])), 1);
    assert_eq!(code(&vc(&["gen", "random", "5", "2", "0.5"])), 1);
    assert_eq!(code(&vc(&["sweep", "--input", &k2, "--trials", "0"])), 1);
    assert_eq!(code(&vc(&["--help"])), 0);

    assert_eq!(code(&vc(&["run", "--input", &d.file("bad.el", "2\n0 5\n")])), 2);
    assert_eq!(code(&vc(&["run", "--input", &d.file("bad.pg", "2 1\n0 1 1\n1 1 1\n")])), 2);
    let out = vc(&["run", "--input", &d.file("junk.el", "2\n0 x\n")]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let trace = d.file("k2.trace", "1 0 1 PROPOSE\n1 1 1 PROPOSE\n2 0 1 ACCEPT\n2 1 1 REJECT\n");
    assert_eq!(code(&vc(&["verify", "--input", &k2, "--trace", &trace])), 3);

    let big = d.gen("p40.el", &["path", "40"]);
    assert_eq!(code(&vc(&["oracle", "--input", &big])), 4);

    let missing = d.path("missing.el");
    assert_eq!(code(&vc(&["run", "--input", missing.to_str().unwrap()])), 5);
    let unwritable = Path::new("/nonexistent-dir/out.el");
    assert_eq!(code(&vc(&["gen", "cycle", "4", "--output", unwritable.to_str().unwrap()])), 5);
}

#[test]
fn text_output_lists_every_check() {
    let d = Dir::new();
    let out = vc(&["run", "--input", &d.file("k2.el", "2\n0 1\n")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("certified_ratio: 2/1\n"));
    assert!(text.contains("  projection-equals-cover: pass\n"));
}
