use std::path::PathBuf;

use biserial::cli::document::PresentationDocument;
use biserial::cli::examples::builtin_presentation;
use biserial::cli::{run_command, Output};

fn run(args: &[&str]) -> Output {
    run_command(std::iter::once("biserial").chain(args.iter().copied()))
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("biserial-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_example_4_1() {
    let out = run(&["build", "ex4.1", "--report"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("dimension: 72\n"));
    assert!(out.stdout.contains("  1: 8 8 8\n"));
}

#[test]
fn build_example_4_2_json() {
    let out = run(&["--json", "build", "ex4.2", "--report"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 51);
    assert_eq!(v["details"]["virtual_loops"], serde_json::json!(["xi"]));
    assert_eq!(v["details"]["gabriel_quiver"].as_array().unwrap().len(), 5);
}

#[test]
fn example_4_1_is_not_symmetric_over_rationals() {
    let out = run(&["check", "ex4.1", "--symmetric"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.starts_with("symmetric: not symmetric"), "{}", out.stdout);
}

#[test]
fn check_all_verdicts() {
    let out = run(&["--json", "check", "ex3.6:m=1,n=3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["weakly_symmetric"]["holds"], true);
    assert_eq!(v["symmetric"]["verdict"], "symmetric");
    assert_eq!(v["special_biserial"]["holds"], true);
}

#[test]
fn oracle_agrees_on_bundled_special_example() {
    let out = run(&["oracle", "ex3.6:m=2,n=3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("oracle dimension: 5"), "{}", out.stdout);
}

#[test]
fn oracle_rejects_unstable_bound() {
    let out = run(&["oracle", "ex3.6:m=1,n=4", "--trunc", "2"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("unstable"), "{}", out.stderr);
}

#[test]
fn validation_failure_exits_2() {
    let mut doc = builtin_presentation("ex3.5").unwrap();
    doc.d.insert("alpha".into(), "2".into());
    doc.d.insert("beta".into(), "1/2".into());
    let path = temp("cond2.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("admissible condition (ii)"), "{}", out.stderr);

    let out = run(&["--json", "validate", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"], "validation");
    assert_eq!(v["exit"], 2);
}

#[test]
fn dangling_reference_exits_4() {
    let mut doc = builtin_presentation("ex4.1").unwrap();
    doc.f.insert("alpha".into(), "omega".into());
    let path = temp("dangling.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 4);
    assert!(out.stderr.contains("dangling reference to arrow `omega`"));
}

#[test]
fn missing_file_and_usage_errors() {
    assert_eq!(run(&["build", "/nonexistent/doc.json"]).code, 4);
    assert_eq!(run(&["frobnicate"]).code, 4);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn import_emits_buildable_presentation() {
    let path = temp("emitted.json");
    let out = run(&["import-cbvf", "ex4.1-cbvf", "--emit", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("round trip: h recovered exactly"));
    let out = run(&["--json", "build", path.to_str().unwrap(), "--report"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["dimension"], 72);
    assert_eq!(v["details"]["cartan"], serde_json::json!([[8, 8, 8], [8, 8, 8], [8, 8, 8]]));
}

#[test]
fn example_documents_load_from_disk() {
    for name in ["ex3.5", "ex3.6:m=1,n=2", "ex4.1", "ex4.2"] {
        let out = run(&["example", name]);
        assert_eq!(out.code, 0);
        let doc = PresentationDocument::parse(&out.stdout).unwrap();
        let path = temp(&format!("{}.json", name.replace([':', ',', '='], "_")));
        std::fs::write(&path, &out.stdout).unwrap();
        assert_eq!(run(&["validate", path.to_str().unwrap()]).code, 0, "{name}");
        assert_eq!(run(&["build", path.to_str().unwrap()]).code, 0, "{name}");
        assert_eq!(doc, builtin_presentation(name).unwrap());
    }
    let list = run(&["example"]);
    assert_eq!(list.stdout.lines().count(), 5);
}

#[test]
fn reports_are_deterministic() {
    for args in
        [&["--json", "build", "ex4.2", "--report"][..], &["check", "ex4.1"][..], &["import-cbvf", "ex4.1-cbvf"][..]]
    {
        assert_eq!(run(args), run(args));
    }
}
