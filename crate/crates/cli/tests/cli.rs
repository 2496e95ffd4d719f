use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corelattice"))
        .args(args)
        .env_remove("CORELATTICE_CAP")
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

#[test]
fn enumerate_3_4() {
    let out = run(&["enumerate", "3", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 6);
    let footer = &recs[5]["footer"];
    assert_eq!(footer["count"], 5);
    assert_eq!(footer["total"], "10");
    assert_eq!(footer["average"], "2");
    for r in &recs[..5] {
        for key in [
            "charges",
            "z",
            "partition",
            "size",
            "length",
            "skew_length",
            "co_skew_length",
        ] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
    }
}

#[test]
fn enumerate_2_3_has_two_records() {
    let recs = lines(&run(&["enumerate", "2", "3"]));
    assert_eq!(recs.iter().filter(|r| r.get("footer").is_none()).count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "4", "6"]).status.code(), Some(2));
    assert_eq!(run(&["poly", "6", "9"]).status.code(), Some(2));
    assert_eq!(
        run(&["enumerate", "3", "4", "--cap", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let env_cap = Command::new(env!("CARGO_BIN_EXE_corelattice"))
        .args(["enumerate", "5", "7"])
        .env("CORELATTICE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(env_cap.status.code(), Some(3));
}

#[test]
fn summary_is_single_object() {
    let recs = lines(&run(&["enumerate", "3", "5", "--summary"]));
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["count"], 7);
}

#[test]
fn poly_reports() {
    let r = &lines(&run(&["poly", "3", "4"]))[0];
    assert_eq!(r["catalan"], "5");
    assert_eq!(r["cat_q"], "1 + q^2 + q^3 + q^4 + q^6");
    assert_eq!(r["symmetric"], true);
    assert_eq!(r["specializes"], true);
    let r = &lines(&run(&["poly", "3", "11"]))[0];
    assert_eq!(r["catalan"], "26");
    let r = &lines(&run(&["poly", "5", "1"]))[0];
    assert_eq!(r["catalan"], "1");
    assert_eq!(r["cat_q"], "1");
    assert_eq!(r["cat_qt"], "1");
}

#[test]
fn csv_has_header() {
    let out = run(&["enumerate", "2", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    assert_eq!(
        rows.next(),
        Some("charges,z,partition,size,length,skew_length,co_skew_length")
    );
    assert_eq!(rows.count(), 2);
    let out = run(&["verify", "qt3", "--b-max", "8", "--format", "csv"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("suite,check,params,passed,exploratory\n"));
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "anderson", "--a-max", "5", "--b-max", "16"][..],
        &["verify", "sizmaj2", "--n-max", "7"],
        &["verify", "qt3", "--b-max", "20"],
    ] {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let recs = lines(&out);
        assert!(!recs.is_empty());
        assert!(recs.iter().all(|r| r["passed"] == true));
        assert!(recs.iter().all(|r| r.get("elapsed").is_none()));
    }
}

#[test]
fn exploration_suites_exit_zero() {
    for s in ["unimodality", "age-search"] {
        let out = run(&["verify", s, "--a-max", "3", "--b-max", "8", "--summary"]);
        assert_eq!(out.status.code(), Some(0), "{s}");
    }
}

#[test]
fn output_independent_of_jobs() {
    let one = run(&["enumerate", "5", "8", "--jobs", "1"]);
    let four = run(&["enumerate", "5", "8", "--jobs", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let one = run(&[
        "verify",
        "armstrong",
        "--a-max",
        "4",
        "--b-max",
        "9",
        "--jobs",
        "1",
    ]);
    let four = run(&[
        "verify",
        "armstrong",
        "--a-max",
        "4",
        "--b-max",
        "9",
        "--jobs",
        "4",
    ]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("corelattice-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.jsonl");
    let out = run(&["enumerate", "3", "4", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 6);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn perm_and_ehrhart_and_search() {
    assert_eq!(lines(&run(&["perm", "4"])).len(), 24);
    let s = &lines(&run(&["perm", "5", "--summary"]))[0];
    assert_eq!(s["sizmaj2"], true);
    assert_eq!(run(&["perm", "12"]).status.code(), Some(2));

    let r = &lines(&run(&["ehrhart", "roots", "3"]))[0];
    assert!(r.is_object());
    let out = run(&["ehrhart", "polytope", "triangle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["holds"], true);
    let r = &lines(&run(&["ehrhart", "cores", "3", "--residue", "1"]))[0];
    assert_eq!(r["stat"], "count");

    let out = run(&["search-age", "3", "--b", "4,5,7,8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["a"], 3);
}
