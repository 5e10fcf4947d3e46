use std::fs;
use std::process::{Command, Output};

fn exturan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exturan"))
        .args(args)
        .env_remove("EXTURAN_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn construct_then_detect() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.txt");
    let o = exturan(&["construct", "h3", "12", "3"]);
    assert!(o.status.success());
    fs::write(&path, &o.stdout).unwrap();
    let o = exturan(&["detect", "f5", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NONE");
    let o = exturan(&["detect", "matching", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["size"], 3);
}

#[test]
fn detect_finds_f5_and_colored_triangles() {
    let dir = tempfile::tempdir().unwrap();
    let f5 = dir.path().join("f5.txt");
    fs::write(&f5, "u 5 3\n0 1 2\n0 1 3\n2 3 4\n").unwrap();
    let o = exturan(&["detect", "f5", f5.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["witness"]["vertices"], serde_json::json!([0, 1, 2, 3, 4]));

    let col = dir.path().join("col.txt");
    fs::write(&col, "c 3 2\nlayer 0\n0 2\n1 2\nlayer 1\n0 1\n").unwrap();
    let o = exturan(&["detect", "2col-triangle", col.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = exturan(&["detect", "rainbow-triangle", col.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4), "two layers cannot hold a rainbow triangle");

    let o = exturan(&["detect", "triangle", col.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn bad_input_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "u 4 2\n0 1\n2 1\n").unwrap();
    let o = exturan(&["detect", "triangle", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn formula_values() {
    let o = exturan(&["formula", "ff", "33"]);
    assert!(stdout(&o).starts_with("1331 "));
    let o = exturan(&["formula", "main", "150", "4", "--json"]);
    let v = json(&o);
    assert_eq!(v["value"], "21316");
    assert_eq!(v["source"], "f5-matching");
    assert_eq!(exturan(&["formula", "nope", "1"]).status.code(), Some(4));
}

#[test]
fn search_json_schema() {
    let o = exturan(&["search", "--n", "5", "--forbid", "triangle", "--unique", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["optimum"], 6);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
    assert_eq!(v["classes"]["classes"].as_array().unwrap().len(), 1);
    assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);

    let o = exturan(&["search", "--n", "4", "--layers", "2", "--pattern", "2col", "--json"]);
    assert_eq!(json(&o)["optimum"], 8);
}

#[test]
fn budget_env_bounds_search() {
    let o = Command::new(env!("CARGO_BIN_EXE_exturan"))
        .args(["search", "--n", "9", "--forbid", "triangle", "--json"])
        .env("EXTURAN_BUDGET", "25")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["exhaustive"], false);
}

#[test]
fn verify_prints_claims() {
    let o = exturan(&["verify", "h3", "12", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
    assert!(exturan(&["verify", "star", "9", "0"]).status.success());
    assert!(exturan(&["verify", "turan3", "9", "3"]).status.success());
    assert_eq!(exturan(&["verify", "h3", "3", "5"]).status.code(), Some(4));
}

#[test]
fn campaign_exit_codes() {
    assert_eq!(exturan(&["campaign", "mantel-scan"]).status.code(), Some(0));
    assert_eq!(exturan(&["campaign", "paper-thm17"]).status.code(), Some(0));
    let o = exturan(&["campaign", "conj52", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["report"]["items"][1]["status"], "counterexample");
    assert!(v["report"]["items"][1]["counterexample"].is_array());
    assert_eq!(exturan(&["campaign", "conj51"]).status.code(), Some(3));
}

#[test]
fn campaign_files_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("c.txt");
    let empty = dir.path().join("empty.txt");
    fs::write(&spec, "campaign name=mine\nsearch n=6 forbid=triangle expect=mantel(6)\nformula af(7,2,2) expect=10\n").unwrap();
    fs::write(&empty, "# nothing\n").unwrap();
    let jp = dir.path().join("r.json");
    let cp = dir.path().join("r.csv");
    let o = exturan(&[
        "campaign",
        spec.to_str().unwrap(),
        "--json-out",
        jp.to_str().unwrap(),
        "--csv-out",
        cp.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&jp).unwrap()).unwrap();
    assert_eq!(report["report"]["campaign"], "mine");
    assert_eq!(report["timings_ms"].as_array().unwrap().len(), 2);
    let csv = fs::read_to_string(&cp).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().nth(1).unwrap().contains(",match,"));

    let o = exturan(&["campaign", empty.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["items"], serde_json::json!([]));

    fs::write(&spec, "search n=6\nsearch n=x\n").unwrap();
    let o = exturan(&["campaign", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn campaign_reports_are_reproducible() {
    let a = json(&exturan(&["campaign", "f5-small", "--json"]));
    let b = json(&exturan(&["campaign", "f5-small", "--json"]));
    assert_eq!(a["report"], b["report"]);
}

#[test]
fn lists() {
    assert!(stdout(&exturan(&["campaign", "--list"])).contains("two-colored-mantel"));
    assert!(stdout(&exturan(&["formula", "--list"])).contains("2col-mantel"));
    assert!(stdout(&exturan(&["construct", "--list"])).contains("h3"));
}
