use std::process::Command;

use serde_json::Value;
use twind_core::TorusElement;

fn twind(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twind"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf-8 output");
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().expect("exit code"), v, stdout)
}

fn write_problem(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("twind-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn info_g2() {
    let (code, v, _) = twind(&["info", "--group", "G2"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "info");
    assert_eq!(v["diagnostics"]["weyl_order_g"], 12);
    assert_eq!(v["diagnostics"]["rho_g"]["num"], serde_json::json!([1, 1]));
    assert_eq!(v["result"]["positive_roots"].as_array().unwrap().len(), 6);
}

#[test]
fn multiplet_f4_b4() {
    let (code, v, _) = twind(&[
        "multiplet",
        "--group",
        "F4",
        "--subgroup",
        "B4",
        "--input",
        "e^rhoG",
    ]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["multiplet"]["members"].as_array().unwrap().len(), 3);
    assert_eq!(r["alternating_sum"], 0);
    assert_eq!(r["gkrs_identity"], true);
    assert_eq!(v["diagnostics"]["coset_count"], 3);
}

#[test]
fn multiplet_payload_deserializes() {
    let (code, v, _) = twind(&[
        "multiplet",
        "--group",
        "B2",
        "--subgroup",
        "t",
        "--input",
        "e^rhoG - 2*e^(rhoG + a1)",
    ]);
    assert_eq!(code, 0);
    let source: TorusElement =
        serde_json::from_value(v["result"]["multiplet"]["source"].clone()).unwrap();
    assert_eq!(source.len(), 2);
    assert_eq!(
        serde_json::to_value(&source).unwrap(),
        v["result"]["multiplet"]["source"]
    );
}

#[test]
fn spinc_so7_over_so3xso4() {
    let (code, v, _) = twind(&["spinc", "--group", "B3:spin", "--subgroup", "so3xso4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["classification"]["is_c_spinorial"], false);
}

#[test]
fn unit_and_euler_inductions() {
    let (code, v, _) = twind(&["induce", "--group", "G2", "--subgroup", "a2long"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 1);
    let (code, v, _) = twind(&[
        "induce",
        "--group",
        "F4",
        "--subgroup",
        "b4",
        "--input",
        "hdr",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 3);
}

#[test]
fn branch_and_bwb() {
    let (code, v, _) = twind(&[
        "branch",
        "--group",
        "G2",
        "--subgroup",
        "a2long",
        "--weight",
        "w1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 7);
    let (code, v, _) = twind(&["bwb", "--group", "A2", "--subgroup", "t", "--weight", "-a1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["agrees_with_induction"], true);
    assert_eq!(v["result"]["chamber"]["length"], 2);
}

#[test]
fn pairing_and_lefschetz() {
    let (code, v, _) = twind(&["pairing", "--group", "A2", "--subgroup", "t"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["is_unit"], true);
    let (code, v, _) = twind(&[
        "lefschetz",
        "--group",
        "B3",
        "--subgroup",
        "so3xso4",
        "--trials",
        "5",
        "--seed",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["report"]["samples"].as_array().unwrap().len(),
        5
    );
    assert!(
        v["result"]["report"]["max_relative_error"]
            .as_f64()
            .unwrap()
            <= 1e-8
    );
}

#[test]
fn verify_suite_passes() {
    let (code, v, _) = twind(&["verify", "--suite", "multiplets", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn deterministic_output() {
    let args = [
        "lefschetz",
        "--group",
        "G2",
        "--subgroup",
        "a2long",
        "--seed",
        "11",
    ];
    let (_, _, a) = twind(&args);
    let (_, _, b) = twind(&args);
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn root_index_out_of_range() {
    let path = write_problem(
        "range.json",
        r#"{"group": "A2", "subgroup": {"roots": [0, 1, 2, 3]}}"#,
    );
    let (code, v, _) = twind(&["whset", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "schema_violation");
    assert_eq!(v["error"]["pointer"], "/subgroup/roots/3");
}

#[test]
fn non_integer_coefficient() {
    let path = write_problem(
        "coeff.json",
        r#"{"group": "A1", "subgroup": "t", "input": {"terms": [{"coeff": 0.5, "weight": [1]}]}}"#,
    );
    let (code, v, _) = twind(&["induce", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "schema_violation");
    assert_eq!(v["error"]["pointer"], "/input/terms/0/coeff");
}

#[test]
fn minimal_document_and_flag_override() {
    let path = write_problem("minimal.json", r#"{"group": "A2"}"#);
    let p = path.to_str().unwrap();
    let (code, v, _) = twind(&["whset", "--problem", p]);
    assert_eq!(code, 0);
    assert_eq!(v["problem"]["subgroup"], "g");
    assert_eq!(v["problem"]["seed"], 0);
    assert_eq!(v["result"]["count"], 1);
    let (code, v, _) = twind(&["whset", "--problem", p, "--subgroup", "simple:0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 3);
}

#[test]
fn echoed_problem_round_trips() {
    let (code, v, _) = twind(&[
        "spinc",
        "--group",
        "B2:so",
        "--subgroup",
        "roots:0",
        "--twist",
        "rhoG",
        "--signs",
        "1,-1,1",
    ]);
    assert_eq!(code, 0);
    let echoed = v["problem"].clone();
    let path = write_problem("echo.json", &echoed.to_string());
    let (code, w, _) = twind(&["spinc", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["problem"], echoed);
    assert_eq!(w["result"], v["result"]);
}

#[test]
fn exit_codes() {
    assert_eq!(twind(&["frobnicate"]).0, 2);
    assert_eq!(twind(&["induce", "--group", "A2", "--kind", "weird"]).0, 2);
    assert_eq!(twind(&["info", "--seed", "-1"]).0, 2);
    let (code, v, _) = twind(&["info"]);
    assert_eq!((code, v["error"]["pointer"].as_str()), (1, Some("/group")));
    let (code, v, _) = twind(&["info", "--group", "Q7"]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (1, Some("unknown_series"))
    );
    let (code, v, _) = twind(&[
        "induce",
        "--group",
        "B3:spin",
        "--subgroup",
        "so3xso4",
        "--kind",
        "spin",
    ]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("not_spin")));
    let (code, v, _) = twind(&["whset", "--group", "E7"]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (1, Some("order_cap_exceeded"))
    );
    let (code, v, _) = twind(&["info", "--group", "E8"]);
    assert_eq!(code, 0);
    assert_eq!(v["diagnostics"]["weyl_order_g"], 696_729_600u64);
    assert!(v["diagnostics"]["weyl_order_h"].is_null());
    let (code, v, _) = twind(&[
        "induce",
        "--group",
        "A1",
        "--subgroup",
        "t",
        "--input",
        "3000000000*3000000000*3000000000",
    ]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("overflow")));
    assert_eq!(twind(&["--help"]).0, 0);
}

#[test]
fn schema_lists_every_field() {
    let text = include_str!("../schema/problem.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    let mut props: Vec<&str> = schema["properties"]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    let mut fields = twind_cli::problem::FIELDS.to_vec();
    props.sort();
    fields.sort();
    assert_eq!(props, fields);
}
