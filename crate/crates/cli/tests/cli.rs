use std::fs;
use std::path::Path;

use serde_json::Value;
use stablecut_cli::run_command;
use stablecut_core::io::{cut_from_json, instance_from_json};
use tempfile::TempDir;

const C4: &str = r#"{"n":4,"weights":[[0,1,1],[1,2,1],[2,3,1],[3,0,1]]}"#;
const K3: &str = r#"{"n":3,"weights":[[0,1,1],[1,2,1],[0,2,1]]}"#;

fn run(args: &[&str]) -> (i32, Value, String) {
    let mut argv = vec!["stablecut"];
    argv.extend_from_slice(args);
    let out = run_command(argv);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json, out.stderr)
}

fn file(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

#[test]
fn brute_on_c4() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.json", C4);
    let (code, out, _) = run(&["solve", "--algo", "brute", &c4]);
    assert_eq!(code, 0);
    assert_eq!(out["weight"], 4.0);
    assert_eq!(out["details"]["optimal_count"], 1);
}

#[test]
fn verify_rejects_non_cut_file() {
    let dir = TempDir::new().unwrap();
    let k3 = file(&dir, "k3.json", K3);
    let bad = file(&dir, "bad.json", r#"{"side":[1,1,1]}"#);
    assert_eq!(run(&["verify", &k3, "--cut", &bad]).0, 2);
    let garbage = file(&dir, "garbage.json", r#"{"weights": 3"#);
    assert_eq!(run(&["verify", &k3, "--cut", &garbage]).0, 2);
    let short = file(&dir, "short.json", r#"{"side":[1,0]}"#);
    assert_eq!(run(&["verify", &k3, "--cut", &short]).0, 2);
}

#[test]
fn malformed_instance_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let bad = file(&dir, "bad.json", r#"{"n": 3, "weights": [[0, 0, 1]]}"#);
    let (code, _, err) = run(&["solve", "--algo", "brute", &bad]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["solve", "--algo", "brute", &path(&dir, "missing.json")]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn verify_reports_stability() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.json", C4);
    let (code, out, _) = run(&["verify", &c4]);
    assert_eq!(code, 0);
    assert_eq!(out["gamma"], "inf");
    assert_eq!(out["is_unique_maxcut"], true);
    let k3 = file(&dir, "k3.json", K3);
    let cut = file(&dir, "cut.json", r#"{"side":[1,0,0]}"#);
    let (_, out, _) = run(&["verify", &k3, "--cut", &cut]);
    assert_eq!(out["optimal_count"], 3);
    assert_eq!(out["gamma"], 1.0);
}

#[test]
fn randomized_paths_need_a_seed() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.json", C4);
    assert_eq!(run(&["solve", "--algo", "dense", "--m", "4", &c4]).0, 2);
    assert_eq!(run(&["solve", "--algo", "gw", &c4]).0, 2);
    assert_eq!(run(&["gen", "planted-partition", "--n", "8"]).0, 2);
}

#[test]
fn solver_failure_exits_one() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.json", C4);
    // One sampled vertex placed in L sends every vertex to the other side.
    let (code, out, _) = run(&["solve", "--algo", "dense", "--m", "1", "--mode", "random:1", "--seed", "0", &c4]);
    assert_eq!(code, 1);
    assert_eq!(out["status"], "solver_failed");
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let b = path(&dir, "b.json");
    let args = |out: &str| {
        vec!["gen", "stable-bipartite-noise", "--n", "10", "--gamma", "4", "--seed", "9", "-o"]
            .into_iter()
            .map(String::from)
            .chain([out.to_string()])
            .collect::<Vec<_>>()
    };
    let mut argv_a = vec!["stablecut".to_string()];
    argv_a.extend(args(&a));
    let mut argv_b = vec!["stablecut".to_string()];
    argv_b.extend(args(&b));
    assert_eq!(run_command(argv_a.clone()).code, 0);
    assert_eq!(run_command(argv_b).code, 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let sidecar = |p: &str| fs::read_to_string(Path::new(p).with_extension("sidecar.json")).unwrap();
    assert_eq!(sidecar(&a), sidecar(&b));
    let side: Value = serde_json::from_str(&sidecar(&a)).unwrap();
    assert_eq!(side["claims"]["guarantee"], "oracle");
    assert_eq!(side["metadata"]["rng"], "ChaCha8");
    assert_eq!(run_command(argv_a.clone()).stdout, run_command(argv_a).stdout);
}

#[test]
fn every_solver_reports_a_rederivable_weight() {
    let dir = TempDir::new().unwrap();
    let inst_path = path(&dir, "inst.json");
    let (code, _, _) = run(&["gen", "euclidean-metric", "--n", "8", "--s", "6", "--seed", "2", "-o", &inst_path]);
    assert_eq!(code, 0);
    let inst = instance_from_json(&fs::read_to_string(&inst_path).unwrap()).unwrap();
    let cut_path = path(&dir, "cut.json");
    let runs: [&[&str]; 8] = [
        &["--algo", "brute"],
        &["--algo", "dense", "--m", "6", "--seed", "1"],
        &["--algo", "metric-dense", "--m", "6", "--mode", "random:64", "--seed", "1"],
        &["--algo", "ball"],
        &["--algo", "sqrt-stable", "--auto"],
        &["--algo", "warmup-2n"],
        &["--algo", "spanning-tree", "--reps", "50", "--seed", "1"],
        &["--algo", "gw", "--trials", "20", "--seed", "1"],
    ];
    for extra in runs {
        let mut args = vec!["solve", &inst_path, "-o", &cut_path, "--oracle"];
        args.extend_from_slice(extra);
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{extra:?}: {err}");
        let cut = cut_from_json(&fs::read_to_string(&cut_path).unwrap()).unwrap();
        let weight = inst.cut_weight(&cut);
        assert_eq!(out["weight"].as_f64().unwrap(), weight, "{extra:?}");
        assert!(out["oracle_weight"].as_f64().unwrap() >= weight * (1.0 - 1e-12));
        assert!(out.get("wall_time_seconds").is_none());
    }
    let (_, out, _) = run(&["solve", &inst_path, "--algo", "ball", "--oracle"]);
    assert_eq!(out["matched_oracle"], true);
}

#[test]
fn certify_c4() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.json", C4);
    let cut = file(&dir, "cut.json", r#"{"side":[1,0,1,0]}"#);
    let (code, out, _) = run(&["certify", "--spectral", "--bipolar", &c4, &cut]);
    assert_eq!(code, 0);
    let spectral = &out["spectral"];
    assert_eq!(spectral["certificate"]["verdict"], "certified");
    let eig: Vec<f64> = serde_json::from_value(spectral["certificate"]["eigenvalues"].clone()).unwrap();
    for (a, b) in eig.iter().zip([0.0, 2.0, 2.0, 4.0]) {
        assert!((a - b).abs() < 1e-8);
    }
    assert_eq!(spectral["kernel_residual"], 0.0);
    assert_eq!(out["bipolarity"]["agree"], true);
    assert_eq!(out["distinguished"]["threshold_h"].as_f64().map(|t| (t - 14.93).abs() < 0.01), Some(true));
}

#[test]
fn split_exports_instance_and_map() {
    let dir = TempDir::new().unwrap();
    let inst = file(&dir, "sq.json", C4.replace("[3,0,1]", "[3,0,1],[0,2,2],[1,3,2]").as_str());
    let out_path = path(&dir, "split.json");
    let map_path = path(&dir, "map.json");
    let (code, out, err) = run(&["split", &inst, "-o", &out_path, "--map", &map_path]);
    assert_eq!(code, 0, "{err}");
    let split = instance_from_json(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(out["split_size"].as_u64().unwrap() as usize, split.n());
    let map: Value = serde_json::from_str(&fs::read_to_string(&map_path).unwrap()).unwrap();
    assert_eq!(map["map"]["pi"].as_array().unwrap().len(), split.n());
    let k3 = file(&dir, "k3.json", K3);
    assert_eq!(run(&["split", &k3, "-o", &out_path]).0, 0);
    let not_metric = file(&dir, "nm.json", r#"{"n":3,"weights":[[0,1,1],[1,2,1],[0,2,5]]}"#);
    assert_eq!(run(&["split", &not_metric, "-o", &out_path]).0, 2);
}

#[test]
fn bench_suites() {
    let (code, out, _) = run(&["bench", "--suite", "gw-gap", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out["all_below"], true);
    let (code, out, _) = run(&["bench", "--suite", "stability-sweep", "--seed", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out["rows"].as_array().unwrap().len(), 30);
    let (_, again, _) = run(&["bench", "--suite", "stability-sweep", "--seed", "1"]);
    assert_eq!(out, again);
    assert_eq!(run(&["bench", "--suite", "acceptance", "--seed", "1", "--criterion", "11"]).0, 2);
}

#[test]
fn bench_acceptance_emits_the_full_table() {
    let (code, out, _) = run(&["bench", "--suite", "acceptance", "--seed", "1"]);
    let rows = out["criteria"].as_array().unwrap();
    assert_eq!(rows.len(), 10);
    let all = rows.iter().all(|r| r["passed"] == true);
    assert_eq!(out["passed"], all);
    assert_eq!(code, if all { 0 } else { 1 });
    assert!(rows.iter().all(|r| r.get("seconds").is_none()));
}
