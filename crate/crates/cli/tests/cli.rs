use std::process::{Command, Output};

use serde_json::Value;

fn superpi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superpi")).args(args).env_remove("SUPERPI_SEED").env_remove("SUPERPI_FORMAT").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn cube_of_commutator_vanishes_on_f() {
    let o = superpi(&["eval", "[t1,t2]^3", "--on", "F"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    let o = superpi(&["eval", "[t1,t2]", "--on", "F", "--format", "json"]);
    assert_eq!(json(&o)["results"][0]["zero"], false);
}

#[test]
fn assignments_extend_f() {
    let o = superpi(&["eval", "[t1,t2,t3]", "--on", "F", "--assign", "t3=C1*C2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_ne!(stdout(&o).trim(), "0");
    let o = superpi(&["eval", "[t1,t2,t3]", "--on", "F"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_renders_polynomials() {
    let o = superpi(&["eval", "[t1,t2,t1^(3)]", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["kind"], "noncommutative polynomial");
    let text = v["value"].as_str().unwrap().to_string();
    assert_eq!(text.matches("t2").count(), 5, "{text}");
    let again = json(&superpi(&["eval", "--format", "json", "--", &text]));
    assert_eq!(again["value"], v["value"]);
}

#[test]
fn s4_is_a_member_of_its_own_ideal() {
    let o = superpi(&["member", "s4", "--gens", "fbasis", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("IN"), "{}", stdout(&o));
    let o = superpi(&["member", "[t1,t2]*[t3,t4]", "--gens", "fbasis", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["member"], false);
    assert_eq!(v["consequence_dim"], 1);
}

#[test]
fn dims_table_agrees_with_both_oracles() {
    let o = superpi(&["dims", "4..6", "--format", "json"]);
    let rows = json(&o);
    let get = |k: &str| rows.as_array().unwrap().iter().map(|r| r[k].as_u64().unwrap()).collect::<Vec<_>>();
    assert_eq!(get("gamma_rank"), vec![9, 44, 265]);
    assert_eq!(get("derangements"), vec![9, 44, 265]);
    assert_eq!(get("gamma_v_rank"), vec![8, 15, 24]);
    assert_eq!(get("gamma_v_hook"), vec![8, 15, 24]);
    let o = superpi(&["dims", "2..3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = json(&o);
    for (r, d) in rows.as_array().unwrap().iter().zip([1, 2]) {
        assert_eq!(r["gamma_rank"], d);
        assert_eq!(r["gamma_v_rank"], d);
        assert!(r["gamma_v_hook"].is_null());
    }
    assert_eq!(superpi(&["dims", "1..3"]).status.code(), Some(2));
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = superpi(&["eval", "[t1,\nt2 +]"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column 5"), "{err}");
    assert_eq!(superpi(&["verify", "nosuch"]).status.code(), Some(2));
    assert_eq!(superpi(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_reports_are_deterministic() {
    let run = || {
        let o = superpi(&["verify", "relations", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        let mut v = json(&o);
        for c in v["claims"].as_array_mut().unwrap() {
            c["wall_time"] = Value::from(0);
        }
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["suite"], "relations");
    assert!(a["totals"]["claims"].as_u64().unwrap() >= 9);
    assert_eq!(a["totals"]["refuted_critical"], 0);
}

#[test]
fn environment_overrides_flags() {
    let o = Command::new(env!("CARGO_BIN_EXE_superpi")).args(["verify", "relations", "--format", "json"]).env("SUPERPI_SEED", "7").output().unwrap();
    assert_eq!(json(&o)["config"]["seed"], 7);
    let o = Command::new(env!("CARGO_BIN_EXE_superpi")).args(["verify", "relations", "--seed", "3", "--format", "json"]).env("SUPERPI_SEED", "7").output().unwrap();
    assert_eq!(json(&o)["config"]["seed"], 3);
}

#[test]
fn exhausted_budget_exits_with_three() {
    let o = superpi(&["verify", "pi-equivalence", "--suite-budget-seconds", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(3), "{}", stdout(&o));
    assert!(json(&o)["totals"]["incomplete"].as_u64().unwrap() > 0);
}

#[test]
fn catalog_lists_names() {
    let o = superpi(&["catalog", "list"]);
    let out = stdout(&o);
    for name in ["hall", "fbasis", "popov", "dkl", "phi"] {
        assert!(out.lines().any(|l| l.starts_with(name)), "{name}");
    }
}

#[test]
fn algebra_export_import_round_trip() {
    let path = std::env::temp_dir().join(format!("superpi-ut2-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(superpi(&["algebra", "export", "ut2", "-o", p]).status.code(), Some(0));
    let v = json(&superpi(&["algebra", "import", p, "--format", "json"]));
    assert_eq!(v["dim"], 3);
    assert_eq!(v["unital"], true);
    let o = superpi(&["eval", "[t1,t2]*[t3,t4]", "--on", p]);
    assert!(stdout(&o).contains("identity of"), "{}", stdout(&o));
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn popov_polynomials_on_truncated_m11() {
    let o = superpi(&["eval", "popov", "--on", "m11:3", "--format", "json"]);
    let v = json(&o);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["identity"] == true), "{v}");
    let o = superpi(&["eval", "s4", "--on", "m11:4", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["results"][0]["identity"], false);
    assert!(v["results"][0]["witness"].is_string());
}
