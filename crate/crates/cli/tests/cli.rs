use std::process::{Command, Output};

use serde_json::Value;

use freerep::algebra::{verify_certificate, CertificateExport};
use freerep::repr::{verify_free, RepresentationExport};
use freerep_cli::spec::parse_group_spec;

fn freerep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freerep")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = freerep(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn text_of(args: &[&str]) -> String {
    let out = freerep(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn analyze_q8() {
    let v = json_of(&["analyze", "Q8"]);
    assert_eq!(v["report"]["cycloidal_type"], "QuaternionType");
    assert_eq!(v["report"]["fr_verdict"]["answer"], "yes");
    assert!(v["report"]["unique_involution"].is_number());
    assert!(text_of(&["analyze", "q8"]).contains("freely representable: yes"));
}

#[test]
fn text_and_json_agree() {
    for spec in ["C12", "D5", "sd(7,9,2)", "prod(C5,2O)", "SL2(7)"] {
        let v = json_of(&["analyze", spec]);
        let yes = v["report"]["fr_verdict"]["answer"] == "yes";
        let text = text_of(&["analyze", spec]);
        assert_eq!(text.contains("freely representable: yes"), yes, "{spec}");
    }
}

#[test]
fn norm_relation_round_trip() {
    let v = json_of(&["norm-relation", "prod(C3,C3)"]);
    assert_eq!(v["found"], true);
    let export: CertificateExport = serde_json::from_value(v["certificate"].clone()).unwrap();
    let g = parse_group_spec(&export.group_spec).unwrap().build(2000).unwrap();
    assert!(verify_certificate(&export.import(&g).unwrap()));

    let v = json_of(&["norm-relation", "Q16"]);
    assert_eq!(v["found"], false);
    assert!(text_of(&["norm-relation", "Q16"]).starts_with("none (freely representable)"));
}

#[test]
fn represent_round_trip() {
    let v = json_of(&["represent", "prod(C5,Q8)"]);
    assert_eq!(v["free"], true);
    let export: RepresentationExport = serde_json::from_value(v["representation"].clone()).unwrap();
    let g = parse_group_spec(&export.group_spec).unwrap().build(2000).unwrap();
    let rep = export.import(&g).unwrap();
    assert_eq!(rep.degree(), 2);
    assert!(verify_free(&rep).free);

    let v = json_of(&["represent", "D5"]);
    assert_eq!(v["freely_representable"], false);
}

#[test]
fn census_and_survey() {
    let v = json_of(&["census", "7"]);
    assert_eq!(v["all_match"], true);
    assert_eq!(v["fermat_witness_order"], 21);
    let rows = v["summary"]["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["match"] == true));

    let v = json_of(&["census", "5"]);
    assert!(v["fermat_witness_order"].is_null());

    let v = json_of(&["survey210"]);
    assert_eq!(v["classes"], 12);
    assert_eq!(v["table_agrees"], true);
    let free: Vec<&Value> = v["rows"].as_array().unwrap().iter().filter(|r| r["freely_representable"] == true).collect();
    assert_eq!(free.len(), 1);
    assert_eq!(free[0]["spec"], "C210");
}

#[test]
fn structured_errors_and_exit_codes() {
    let out = freerep(&["--json", "analyze", "prod(C5 2O)"]);
    assert_eq!(out.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["kind"], "parse_error");
    assert_eq!(e["offending_input"], "prod(C5 2O)");
    assert!(out.stdout.is_empty());

    let out = freerep(&["--json", "analyze", "sd(6,4,3)"]);
    assert_eq!(out.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["kind"], "construction_error");

    let out = freerep(&["--json", "--cap", "100", "analyze", "SL2(13)"]);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["kind"], "cap_exceeded");

    let out = freerep(&["--json", "--deadline", "0.05", "census", "13"]);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["kind"], "deadline_exceeded");

    let out = freerep(&["--json", "census", "17"]);
    assert_eq!(out.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(e["kind"], "cap_exceeded");

    let out = freerep(&["analyze", "X1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[parse_error]"));
}

#[test]
fn seed_flag_is_accepted() {
    let v = json_of(&["--seed", "7", "analyze", "C5"]);
    assert_eq!(v["report"]["order"], 5);
}
