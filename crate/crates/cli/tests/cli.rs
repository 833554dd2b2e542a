use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_statesurf"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn validate(schema: &str, v: &Value) {
    let text = std::fs::read_to_string(root().join("schemas").join(format!("{schema}.schema.json"))).unwrap();
    let schema_value: Value = serde_json::from_str(&text).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema_value).expect("schema compiles");
    if let Err(errors) = compiled.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{schema}: {msgs:?}");
    };
}

const TREFOIL_PD: &str = "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]";
const BRAID_12N0873: &str = "5: 1 2 -3 -4 2 -3 1 2 -3 2 -4 -3";

#[test]
fn homogeneous_braid_seifert_classification() {
    let v = json(&["classify", "--braid", BRAID_12N0873, "--state", "seifert"]);
    validate("classify", &v);
    assert_eq!(v["hypotheses"]["adequate"], true);
    assert_eq!(v["hypotheses"]["homogeneous"], true);
    assert_eq!(v["reduced_graph_is_tree"], true);
    assert_eq!(v["fiber"], true);
    assert_eq!(v["geometric_type"], "Fiber");
}

#[test]
fn jones_of_the_trefoil_pd() {
    let v = json(&["jones", "--pd", TREFOIL_PD]);
    validate("jones", &v);
    assert_eq!(v["polynomial"], "1*t^-1 + 1*t^-3 - 1*t^-4");
    assert_eq!(v["terms"], serde_json::json!([[-1, 1], [-3, 1], [-4, -1]]));
}

#[test]
fn jones_of_12n0873() {
    let v = json(&["jones", "--braid", BRAID_12N0873]);
    assert_eq!(
        v["polynomial"],
        "3*t^4 - 7*t^3 + 11*t^2 - 14*t^1 + 15*t^0 - 14*t^-1 + 11*t^-2 - 7*t^-3 + 3*t^-4"
    );
}

#[test]
fn every_subcommand_matches_its_schema() {
    for input in [["--pd", TREFOIL_PD], ["--braid", "3: 1 -2 1 -2"], ["--braid", "2: 1 1"], ["--braid", "2: -1"]] {
        let with = |cmd: &str, extra: &[&str]| {
            let mut a = vec![cmd, input[0], input[1]];
            a.extend_from_slice(extra);
            json(&a)
        };
        validate("parse", &with("parse", &[]));
        validate("jones", &with("jones", &[]));
        validate("search", &with("search", &[]));
        validate("probe", &with("search", &["--probe"]));
        for state in ["all-a", "all-b", "seifert"] {
            validate("state", &with("state", &["--state", state]));
            validate("classify", &with("classify", &["--state", state]));
            validate("polyhedra", &with("polyhedra", &["--state", state]));
        }
    }
    for file in ["corpus/alternating.json", "corpus/mixed.json"] {
        validate("batch", &json(&["batch", file]));
        let corpus: Value = serde_json::from_str(&std::fs::read_to_string(root().join(file)).unwrap()).unwrap();
        validate("corpus", &corpus);
    }
}

#[test]
fn text_format_for_every_subcommand() {
    for args in [
        vec!["parse", "--braid", "2: 1 1 1"],
        vec!["state", "--braid", "2: 1 1 1"],
        vec!["search", "--braid", "2: 1 1 1"],
        vec!["jones", "--braid", "2: 1 1"],
        vec!["classify", "--braid", "2: 1 1 1"],
        vec!["polyhedra", "--braid", "2: 1 1 1"],
    ] {
        let mut a = args.clone();
        a.extend(["--format", "text"]);
        let out = run(&a);
        assert!(out.status.success(), "{a:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.lines().all(|l| l.contains(": ")), "{a:?}\n{text}");
    }
    let out = run(&["jones", "--braid", "2: 1 1", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("polynomial: -1*t^(5/2) - 1*t^(1/2)"));
}

#[test]
fn batch_alternating_rows_are_adequate_and_homogeneous() {
    let rows = json(&["batch", "corpus/alternating.json"]);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 25);
    for r in rows {
        assert_eq!(r["adequate"], true, "{r}");
        assert_eq!(r["homogeneous"], true, "{r}");
        assert!(r["error"].is_null());
    }
}

#[test]
fn batch_csv_has_fixed_columns_and_is_stable() {
    let a = run(&["batch", "corpus/mixed.json", "--format", "csv"]);
    let b = run(&["batch", "corpus/mixed.json", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("name,adequate,homogeneous,beta_prime,chi,orientable,geometric_type,error")
    );
    assert_eq!(lines.next(), Some("12n0873,false,true,,-7,false,HypothesesNotMet,"));
}

#[test]
fn batch_continues_past_bad_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"[{"name": "ok", "braid": "2: 1 1 1"},
            {"name": "both", "braid": "2: 1 1 1", "pd": "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"},
            {"name": "garbage", "pd": "X[1,2"},
            {"name": "also_ok", "pd": "X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]"}]"#,
    )
    .unwrap();
    let out = run(&["batch", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["ok", "both", "garbage", "also_ok"]);
    assert!(rows[0]["error"].is_null() && rows[3]["error"].is_null());
    assert!(rows[1]["error"].is_string() && rows[2]["error"].is_string());
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("garbage"));
}

#[test]
fn exit_codes() {
    let code = |a: &[&str]| run(a).status.code();
    assert_eq!(code(&["parse", "--braid", "2: 1 1 1"]), Some(0));
    assert_eq!(code(&["--help"]), Some(0));
    // Usage errors.
    assert_eq!(code(&[]), Some(1));
    assert_eq!(code(&["parse"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["parse", "--pd", TREFOIL_PD, "--braid", "2: 1"]), Some(1));
    assert_eq!(code(&["state", "--braid", "2: 1 1 1", "--state", "AXB"]), Some(1));
    assert_eq!(code(&["parse", "--braid", "2: 1", "--format", "csv"]), Some(1));
    // Data errors.
    assert_eq!(code(&["parse", "--pd", "X[1,2"]), Some(2));
    assert_eq!(code(&["parse", "--braid", "3: 1 1"]), Some(2));
    assert_eq!(code(&["state", "--braid", "2: 1 1 1", "--state", "AB"]), Some(2));
    assert_eq!(code(&["jones", "--braid", "2: 1 1 1 1", "--cap", "3"]), Some(2));
    assert_eq!(code(&["batch", "no/such/file.json"]), Some(2));
    let out = run(&["parse", "--pd", "X[1,2"]);
    assert!(!out.stderr.is_empty() && out.stdout.is_empty());
}

#[test]
fn search_budget_and_probe() {
    let v = json(&["search", "--braid", "3: 1 -2 1 -2", "--max-states", "5"]);
    assert_eq!(v["status"], "state_limit");
    let full = json(&["search", "--braid", "3: 1 -2 1 -2"]);
    assert_eq!(full["status"], "complete");
    assert_eq!(full["total_states"], 16);
    let states: Vec<&str> = full["found"].as_array().unwrap().iter().map(|f| f["state"].as_str().unwrap()).collect();
    assert!(states.contains(&"AAAA") && states.contains(&"BBBB"));
    let p = json(&["search", "--probe", "--braid", BRAID_12N0873]);
    assert_eq!(p["all_a"]["adequate"], false);
    assert_eq!(p["all_b"]["adequate"], false);
}
