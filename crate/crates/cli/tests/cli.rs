use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn modgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modgraph"))
        .args(args)
        .env_remove("MODGRAPH_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn analyze_pentagon_from_families_output() {
    let dir = TempDir::new().unwrap();
    let fam = modgraph(&["families", "--ngon", "5"]);
    assert_eq!(fam.status.code(), Some(0));
    let path = write(&dir, "pentagon.json", &stdout(&fam));
    let out = modgraph(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema"], "1");
    assert_eq!(report["c"], "5");
    assert_eq!(report["c_decimal"], "5.000000");
    assert_eq!(report["psi"]["routes_agree"], true);
    assert_eq!(report["convergence"]["diverges_at"], "5");
}

#[test]
fn tree_gives_the_no_cycles_report() {
    let dir = TempDir::new().unwrap();
    let path = write(&dir, "tree.txt", "0 1\n1 2\n1 3\n");
    let out = modgraph(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kind"], "no_cycles");
    assert!(report["c"].is_null());
}

#[test]
fn bad_inputs_exit_one_with_location() {
    let dir = TempDir::new().unwrap();
    let disconnected = write(&dir, "bad.txt", "0 1\n2 3\n");
    let out = modgraph(&["analyze", disconnected.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.txt"));
    assert!(stdout(&out).is_empty());

    let garbled = write(&dir, "garbled.txt", "0 1\n1 x\n");
    let out = modgraph(&["analyze", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("garbled.txt:2"), "{}", stderr(&out));

    assert_eq!(modgraph(&["analyze", "/nonexistent/graph.txt"]).status.code(), Some(1));
    assert_eq!(modgraph(&["families", "--doubled", "0"]).status.code(), Some(1));
    assert_eq!(modgraph(&["families", "--ngon", "3", "--doubled", "2"]).status.code(), Some(1));
    assert_eq!(modgraph(&["search", "--genus", "2", "--max-edges", "3", "--target", "x"]).status.code(), Some(1));
    assert_eq!(modgraph(&["search", "--genus", "2", "--max-edges", "16", "--target", "1"]).status.code(), Some(1));
    assert_eq!(modgraph(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(modgraph(&["--help"]).status.code(), Some(0));
}

#[test]
fn batch_analysis_is_all_or_nothing() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.txt", "0 1\n0 1\n0 1\n");
    let bad = write(&dir, "bad.txt", "0 1\n2 3\n");
    let out = modgraph(&["analyze", good.to_str().unwrap(), bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());

    let square = write(&dir, "square.json", &stdout(&modgraph(&["families", "--doubled", "2"])));
    let out = modgraph(&["analyze", good.to_str().unwrap(), square.to_str().unwrap()]);
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["c"], "3/2");
    assert_eq!(lines[1]["c"], "2");

    let csv = modgraph(&["analyze", good.to_str().unwrap(), square.to_str().unwrap(), "--format", "csv"]);
    let text = stdout(&csv);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "path,v,e,b,genus,stable,bridges,c,c_decimal,lower_bound,optimal");
    assert!(rows[1].ends_with(",3/2,1.500000,3/2,true"));
    assert_eq!(rows.len(), 3);
}

#[test]
fn output_file_is_written_whole() {
    let dir = TempDir::new().unwrap();
    let target = dir.path().join("out.json");
    let out = modgraph(&["families", "--doubled", "5", "-o", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let g: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 15);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn search_exit_codes() {
    let none = modgraph(&["search", "--genus", "2", "--max-edges", "3", "--target", "2"]);
    assert_eq!(none.status.code(), Some(3));
    assert!(stdout(&none).is_empty());

    let theta = modgraph(&["search", "--genus", "2", "--max-edges", "3", "--target", "3/2"]);
    assert_eq!(theta.status.code(), Some(0));
    let hits: Vec<Value> = stdout(&theta).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0]["c"], "3/2");
    assert_eq!(hits[0]["v"], 2);

    let rose = modgraph(&["search", "--genus", "2", "--max-edges", "2", "--target", "1"]);
    assert_eq!(rose.status.code(), Some(0));
    assert_eq!(stdout(&rose).lines().count(), 1);
}

#[test]
fn genus_six_search_finds_c_five() {
    let out = modgraph(&["search", "--genus", "6", "--max-edges", "15", "--target", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let hits: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(hits.iter().any(|h| h["c"] == "5" && h["e"] == 15 && h["v"] == 10));
}

#[test]
fn probe_output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let theta = write(&dir, "theta.txt", "0 1\n0 1\n0 1\n");
    let args = ["probe", theta.to_str().unwrap(), "--s", "2", "--samples", "4000"];
    let a = modgraph(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, modgraph(&args).stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["probe"]["values"].as_array().unwrap().len(), 4);

    let seeded = |seed: &str, env: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_modgraph"));
        cmd.args(args).args(["--format", "csv"]).env_remove("MODGRAPH_SEED");
        if !seed.is_empty() {
            cmd.args(["--seed", seed]);
        }
        if let Some(e) = env {
            cmd.env("MODGRAPH_SEED", e);
        }
        cmd.output().unwrap().stdout
    };
    assert_eq!(seeded("", Some("7")), seeded("7", None));
    assert_eq!(seeded("7", Some("8")), seeded("7", None));
    assert_ne!(seeded("", Some("8")), seeded("7", None));
    let csv = String::from_utf8(seeded("7", None)).unwrap();
    assert!(csv.starts_with("R,F,stderr\n"));
    assert_eq!(csv.lines().count(), 5);
}

#[test]
fn probe_rejects_bad_settings() {
    let dir = TempDir::new().unwrap();
    let theta = write(&dir, "theta.txt", "0 1\n0 1\n0 1\n");
    let p = theta.to_str().unwrap();
    assert_eq!(modgraph(&["probe", p, "--s", "2", "--samples", "10"]).status.code(), Some(1));
    assert_eq!(modgraph(&["probe", p, "--s", "-1"]).status.code(), Some(1));
    assert_eq!(modgraph(&["probe", p, "--s", "2", "--log-r", "4,3,5"]).status.code(), Some(1));
    let big = write(&dir, "big.txt", &"0 1\n".repeat(7));
    assert_eq!(modgraph(&["probe", big.to_str().unwrap(), "--s", "2"]).status.code(), Some(1));
}

#[test]
fn analyze_with_probe_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.txt", "0 1\n1 2\n2 0\n");
    let args = ["analyze", tri.to_str().unwrap(), "--probe", "--samples", "20000"];
    let a = modgraph(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, modgraph(&args).stdout);
    let r: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(r["probe"]["status"], "ok");
    assert_eq!(r["probe"]["at_threshold"]["s"], 3.0);
}

#[test]
fn selftest_quick_passes_and_faults_are_caught() {
    let out = modgraph(&["selftest", "--quick"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let table = stdout(&out);
    assert_eq!(table.lines().filter(|l| l.starts_with("[PASS]")).count(), 10);
    assert!(table.contains("[SKIP] AC-9"));

    let faulty = modgraph(&["selftest", "--quick", "--inject-fault", "--format", "json"]);
    assert_eq!(faulty.status.code(), Some(2));
    let first: Value = serde_json::from_str(stdout(&faulty).lines().next().unwrap()).unwrap();
    assert_eq!(first["id"], 1);
    assert_eq!(first["passed"], false);
}
