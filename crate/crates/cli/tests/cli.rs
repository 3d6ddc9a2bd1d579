use doodle_cli::{run, CorpusManifest};
use serde_json::Value;

fn ok(args: &[&str]) -> Value {
    let mut argv = vec!["doodle"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "{args:?}: {}{}", out.stdout, out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    let mut argv = vec!["doodle"];
    argv.extend_from_slice(args);
    run(argv).code
}

#[test]
fn envelope_records_seed_and_version() {
    let v = ok(&[
        "--seed",
        "7",
        "invariant",
        "strangeness",
        "--code",
        "1 1 ; 1:+",
    ]);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["command"], "invariant strangeness");
    assert_eq!(v["result"]["value"], 0);
}

#[test]
fn figure_eight_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("eight.gauss");
    std::fs::write(&path, "1 1 ; 1:+\n").unwrap();
    let v = ok(&[
        "invariant",
        "strangeness",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["value"], 0);
    let m = ok(&[
        "invariant",
        "moment",
        "--input",
        path.to_str().unwrap(),
        "--beta",
        "2",
    ]);
    assert_eq!(m["result"]["per_arc"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["diagram", "validate", "--code", "1 2 1"]), 1);
    assert_eq!(code(&["diagram", "validate", "--code", "1 1 ; 1:+"]), 0);
    assert_eq!(code(&["blocks", "column", "--p", "6"]), 1);
    assert_eq!(code(&["blocks", "column", "--p", "3", "--arity", "4"]), 1);
    assert_eq!(code(&["cliques", "modes", "--class", "aa2a"]), 1);
    assert_eq!(
        code(&["invariant", "moment", "--code", "1 1 ; 1:+", "--beta", "0"]),
        1
    );
    assert_eq!(code(&["report", "census", "--ring", "Z4"]), 1);
    assert_eq!(code(&["nonsense"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn cliques_enumerate() {
    let v = ok(&[
        "cliques",
        "enumerate",
        "--arity",
        "3",
        "--max-complexity",
        "4",
        "--doubles",
        "0",
    ]);
    let by = &v["result"]["by_complexity"];
    assert_eq!(by["2"].as_array().unwrap().len(), 1);
    assert_eq!(by["3"].as_array().unwrap().len(), 1);
    assert_eq!(by["4"].as_array().unwrap().len(), 4);
    assert_eq!(v["result"]["total"], 6);
}

#[test]
fn census_report() {
    let v = ok(&["report", "census", "--context", "doodle", "--ring", "Z"]);
    let counts: Vec<u64> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![0, 0, 0, 1]);
    assert!(!v["result"]["assumptions"].as_array().unwrap().is_empty());
    let f = ok(&[
        "report",
        "census",
        "--context",
        "fourfold-h1",
        "--ring",
        "Z5",
    ]);
    let counts: Vec<u64> = f["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts[2..], [0, 1, 2]);
}

#[test]
fn column_report_round_trips() {
    let out = run([
        "doodle",
        "blocks",
        "column",
        "--arity",
        "3",
        "--context",
        "idoodle",
        "--p",
        "3",
        "--ring",
        "Z",
    ]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", out.stdout);
    let groups = v["result"]["groups"].as_array().unwrap();
    assert_eq!(groups[0]["degree"], -1);
    assert_eq!(groups[0]["group"]["free_rank"], 1);
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "doodle",
        "--seed",
        "3",
        "moves",
        "trace",
        "--code",
        "1 1 ; 1:+",
        "--steps",
        "15",
    ];
    assert_eq!(run(args), run(args));
    let other = run([
        "doodle",
        "--seed",
        "4",
        "moves",
        "trace",
        "--code",
        "1 1 ; 1:+",
        "--steps",
        "15",
    ]);
    assert_ne!(run(args).stdout, other.stdout);
}

#[test]
fn text_format() {
    let out = run([
        "doodle", "--format", "text", "cliques", "modes", "--class", "aaaabbb",
    ]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("processes: 96"), "{}", out.stdout);
}

#[test]
fn complex_commands() {
    let v = ok(&["complex", "homology", "--class", "aaaa2"]);
    assert_eq!(v["result"]["homology"][0]["group"]["free_rank"], 3);
    let c = ok(&["complex", "collision", "--class", "aaaa", "--site", "1"]);
    assert_eq!(c["result"]["target"], "aaa2");
    assert_eq!(
        code(&["complex", "collision", "--class", "aa3", "--site", "0"]),
        1
    );
}

#[test]
fn simplify_the_figure_eight() {
    let v = ok(&[
        "moves",
        "simplify",
        "--code",
        "1 1 ; 1:+",
        "--budget",
        "1000",
    ]);
    assert_eq!(v["result"]["reached_circle"], true);
}

fn corpus(dir: &std::path::Path, n: &str, count: &str, seed: &str) -> CorpusManifest {
    let out = dir.to_str().unwrap();
    let v = ok(&[
        "--seed",
        seed,
        "corpus",
        "generate",
        "--out",
        out,
        "--count",
        count,
        "--max-crossings",
        n,
    ]);
    serde_json::from_value(v["result"].clone()).unwrap()
}

#[test]
fn corpus_generation() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let m1 = corpus(a.path(), "8", "200", "11");
    let m2 = corpus(b.path(), "8", "200", "11");
    assert_eq!(m1, m2);
    assert_eq!(
        std::fs::read(a.path().join("manifest.json")).unwrap(),
        std::fs::read(b.path().join("manifest.json")).unwrap()
    );
    assert_eq!(m1.validated, 200);
    assert!(m1.items.iter().all(|i| i.crossings <= 8));
    assert!(m1.items.iter().any(|i| i.crossings > 0));
    for item in &m1.items {
        let path = a.path().join(&item.file);
        assert_eq!(
            code(&["diagram", "validate", "--input", path.to_str().unwrap()]),
            0,
            "{}",
            item.file
        );
    }
    let c = tempfile::tempdir().unwrap();
    let circle = corpus(c.path(), "0", "5", "2");
    assert!(circle.items.iter().all(|i| i.crossings == 0));
    assert_eq!(
        circle
            .items
            .iter()
            .map(|i| &i.sha256)
            .collect::<std::collections::BTreeSet<_>>()
            .len(),
        1
    );
}
