use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const EXAMPLE_TREE: &str = "# rooted at v5\n5 3\n5 4\n3 1\n3 2\n";

fn treespec(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_treespec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    {
        let mut sin = child.stdin.take().unwrap();
        if let Some(s) = stdin {
            sin.write_all(s.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn diagonalize_from_stdin() {
    let v = json(&treespec(&["diagonalize", "-", "--kind", "adjacency", "--x", "2"], Some(EXAMPLE_TREE)));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["values"], serde_json::json!(["2", "2", "1", "2", "1/2"]));
    assert_eq!((v["positive"].as_u64(), v["negative"].as_u64(), v["zero"].as_u64()), (Some(5), Some(0), Some(0)));
    let v = json(&treespec(&["diagonalize", "-", "--kind", "laplacian", "--x", "-8/5"], Some(EXAMPLE_TREE)));
    assert_eq!(v["values"][2], "71/15");
    let p2 = json(&treespec(&["diagonalize", "-", "--kind", "laplacian", "--x", "0"], Some("0 1\n")));
    assert_eq!(p2["zero"], 1);
}

#[test]
fn count_example_tree() {
    let v = json(&treespec(&["count", "-", "--kind", "laplacian", "--x", "1"], Some(EXAMPLE_TREE)));
    assert_eq!((v["greater"].as_u64(), v["less"].as_u64(), v["multiplicity"].as_u64()), (Some(2), Some(2), Some(1)));
}

#[test]
fn enumerate_four() {
    let v = json(&treespec(&["enumerate", "4", "--format", "json"], None));
    assert_eq!(v["count"], 2);
    let text = treespec(&["enumerate", "4"], None);
    assert_eq!(String::from_utf8(text.stdout).unwrap().lines().count(), 2);
}

#[test]
fn gen_diameter4() {
    let v = json(&treespec(&["gen", "diameter4", "--p", "0", "--s", "1,1", "--format", "json"], None));
    assert_eq!(v["n"], 5);
    assert_eq!(v["code"], "0,1,2,1,2");
    let edges = treespec(&["gen", "diameter4", "--p", "0", "--s", "1,1"], None);
    let loc = json(&treespec(&["localize", "-"], Some(&String::from_utf8(edges.stdout).unwrap())));
    assert_eq!(
        loc["eigenvalues"].as_array().unwrap().iter().map(|e| e["multiplicity"].as_u64().unwrap()).sum::<u64>(),
        5
    );
}

#[test]
fn energy_of_star() {
    let v = json(&treespec(&["energy", "--code", "0,1,1,1"], None));
    assert_eq!(v["le_direct"], "5");
}

#[test]
fn errors_exit_with_two() {
    let out = treespec(&["count", "-", "--x", "1"], Some("0 1\n0 1\n"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(treespec(&["count", "-", "--x", "1/0"], Some("0 1\n")).status.code(), Some(2));
    assert_eq!(treespec(&["verify", "--n-min", "2", "--n-max", "19"], None).status.code(), Some(2));
    assert_eq!(treespec(&["verify", "--n-max", "5", "--checks", "nonsense"], None).status.code(), Some(2));
}

#[test]
fn verify_writes_records_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.jsonl");
    let o = treespec(&["verify", "--n-min", "2", "--n-max", "9", "--out", out.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let records = std::fs::read_to_string(&out).unwrap();
    assert_eq!(records.lines().count(), 1 + 1 + 2 + 3 + 6 + 11 + 23 + 47);
    let first: Value = serde_json::from_str(records.lines().next().unwrap()).unwrap();
    let keys: Vec<&str> = first.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys[..3], ["code", "n", "diameter"]);
    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("run.jsonl.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["totals"]["violations"], 0);
    assert_eq!(manifest["totals"]["trees_checked"], 94);
    let rep = json(&treespec(&["report", out.to_str().unwrap()], None));
    assert_eq!(rep["trees"], 94);
    assert!(rep["orders"].as_array().unwrap().iter().all(|o| o["path_is_equality"] == true));
}

#[test]
fn shards_partition_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let full = path("full.jsonl");
    let checks = "conjecture,below2";
    assert!(treespec(&["verify", "--n-min", "11", "--n-max", "11", "--checks", checks, "--out", &full], None)
        .status
        .success());
    let mut union = BTreeSet::new();
    let mut total = 0;
    for i in 0..4 {
        let p = path(&format!("s{}.jsonl", i));
        let idx = i.to_string();
        let o = treespec(
            &[
                "verify",
                "--n-min",
                "11",
                "--n-max",
                "11",
                "--checks",
                checks,
                "--shards",
                "4",
                "--shard-index",
                &idx,
                "--out",
                &p,
            ],
            None,
        );
        assert!(o.status.success());
        let text = std::fs::read_to_string(&p).unwrap();
        total += text.lines().count();
        union.extend(text.lines().map(str::to_string));
    }
    let whole: BTreeSet<String> = std::fs::read_to_string(&full).unwrap().lines().map(str::to_string).collect();
    assert_eq!(total, whole.len());
    assert_eq!(union, whole);
    assert_eq!(whole.len(), 235);
}

#[test]
fn theorem7_subcommand() {
    let v = json(&treespec(&["theorem7", "--r-max", "5"], None));
    assert_eq!(v["ok"], true);
    assert_eq!(v["rows"][0]["root_value"], "-88/155");
}

#[test]
fn report_flags_violations() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    let record = r#"{"code":"0,1,2,1","n":4,"diameter":3,"leaf_count":2,"gamma":2,"m_below_avg":1,"threshold":2,"conjecture_ok":false,"m_below_2":2,"m_above_2":2,"equality":false,"m_between_avg_and_2":1,"le":null,"violations":["conjecture"]}"#;
    std::fs::write(&path, format!("{}\n", record)).unwrap();
    let out = treespec(&["report", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["violations"], 1);
}
