use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn delcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_delcode"))
        .args(args)
        .env_remove("DELCODE_THREADS")
        .output()
        .expect("run delcode")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("delcode-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn mult_of_the_shifted_pair() {
    let out = delcode(&["mult", "--u", "1000", "--v", "0001"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["m_lcs"], 1);
    assert_eq!(v["m_scs"], 1);
    assert_eq!(v["scs_len"], 5);
}

#[test]
fn graph_stats_small() {
    let v = json(&delcode(&["graph", "stats", "--n", "2", "--k", "1"]));
    assert_eq!(v["N"], 4);
    assert_eq!(v["max_degree"], 3);
    assert_eq!(v["triangles"], 2);
    assert!(v["bollobas_bound"].is_f64());
}

#[test]
fn extremal_verify_rows() {
    let out = delcode(&["extremal", "verify", "--c-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn sets_and_phi() {
    let v = json(&delcode(&["scs", "--u", "10", "--v", "01"]));
    assert_eq!(v["kind"], "SCS");
    assert_eq!(v["strings"], serde_json::json!(["010", "101"]));
    let p = json(&delcode(&["phi", "--u", "10", "--v", "01", "--w", "0"]));
    assert_eq!(p["y"], "101");
    let back = json(&delcode(&[
        "phi", "--u", "10", "--v", "01", "--invert", "101",
    ]));
    assert_eq!(back["w"], "0");
    assert_eq!(
        delcode(&["phi", "--u", "10", "--v", "01", "--invert", "100"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn scripts() {
    let v = json(&delcode(&[
        "script", "apply", "--u", "0110", "--script", "I1@4,D@2",
    ]));
    assert_eq!(v["result"], "0101");
    let d = json(&delcode(&[
        "script", "derive", "--u", "0110", "--v", "1001",
    ]));
    assert_eq!(d["deletions"], d["insertions"]);
    assert_eq!(
        delcode(&["script", "apply", "--u", "01", "--script", "D@0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn usage_and_resource_exit_codes() {
    assert_eq!(delcode(&["nonsense"]).status.code(), Some(1));
    assert_eq!(delcode(&["mult", "--u", "10"]).status.code(), Some(1));
    let out = delcode(&[
        "script",
        "isolation",
        "--n",
        "40",
        "--k",
        "1",
        "--lambda",
        "3",
        "--trials",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(
        delcode(&["graph", "stats", "--n", "30", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn code_files() {
    let good = scratch("vt.code");
    let out = delcode(&[
        "code",
        "vt",
        "--n",
        "6",
        "--residue",
        "0",
        "--save",
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&good).unwrap();
    assert!(text.starts_with("n=6 k=1 size=10 construction=vt\n"));
    let check = delcode(&["code", "check", good.to_str().unwrap(), "--maximal"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["valid"], true);

    let bad = scratch("bad.code");
    fs::write(&bad, "n=2 k=1 size=2 construction=external\n00\n01\n").unwrap();
    let check = delcode(&["code", "check", bad.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(3));
    assert_eq!(json(&check)["valid"], false);
}

#[test]
fn greedy_code_output() {
    let v = json(&delcode(&["code", "greedy", "--n", "2", "--k", "1"]));
    assert_eq!(v["words"], serde_json::json!(["00", "11"]));
    assert_eq!(v["order"], "lex");
    assert_eq!(
        delcode(&["code", "greedy", "--n", "4", "--k", "1", "--order", "zigzag"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn experiment_csv_and_guard() {
    let out = delcode(&["experiment", "code-sizes", "--n", "4..6", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,k,vt,greedy,"));
    assert_eq!(text.lines().count(), 4);

    let path = scratch("tri.csv");
    let out = delcode(&[
        "experiment",
        "triangles",
        "--n",
        "3..12",
        "--max-census-ops",
        "1e6",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!path.exists());
}

#[test]
fn config_file_and_flag_override() {
    let cfg = scratch("delcode.conf");
    fs::write(&cfg, "# presets\nformat = csv\nmax_enum_len = 4\n").unwrap();
    let c = cfg.to_str().unwrap();
    let out = delcode(&[
        "--config",
        c,
        "word",
        "count-repeating",
        "--n",
        "4",
        "--lambda",
        "2",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "count,lambda,n\n8,2,4\n"
    );
    assert_eq!(
        delcode(&[
            "--config",
            c,
            "word",
            "count-repeating",
            "--n",
            "5",
            "--lambda",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    let out = delcode(&[
        "--config",
        c,
        "--format",
        "json",
        "word",
        "count-repeating",
        "--n",
        "4",
        "--lambda",
        "2",
    ]);
    assert_eq!(json(&out)["count"], 8);
    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(
        delcode(&["--config", c, "graph", "stats", "--n", "2", "--k", "1"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["experiment", "triangles", "--n", "6..9", "--format", "csv"];
    let one = Command::new(env!("CARGO_BIN_EXE_delcode"))
        .env("DELCODE_THREADS", "1")
        .args(args)
        .output()
        .unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_delcode"))
        .args(["--threads", "4"])
        .args(args)
        .output()
        .unwrap();
    assert_eq!(one.stdout, four.stdout);
    assert!(!one.stdout.is_empty());
}

#[test]
fn help_lists_schemas() {
    let out = delcode(&["mult", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"m_scs\""));
    let top = String::from_utf8(delcode(&["--help"]).stdout).unwrap();
    assert!(top.contains("Exit codes"));
}
