use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use vfcert::projective::{homogenize_affine, HomogeneousField, HomogeneousFieldJson};
use vfcert::prolongation::first_prolongation;
use vfcert::vectorfield::{FieldJson, VectorField};

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn field_file(dir: &TempDir, name: &str, comps: &[&str]) -> PathBuf {
    let j = serde_json::json!({ "vars": ["x", "y"], "components": comps });
    write(dir, name, &j.to_string())
}

fn vfcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vfcert")).args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bracket_of_coordinate_fields_is_zero() {
    let dir = TempDir::new().unwrap();
    let a = field_file(&dir, "a.json", &["1", "0"]);
    let b = field_file(&dir, "b.json", &["0", "1"]);
    let out = vfcert(&["bracket", s(&a), s(&b), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j: FieldJson = serde_json::from_slice(&out.stdout).unwrap();
    assert!(VectorField::from_json(&j).unwrap().is_zero());
}

#[test]
fn certify_crafted_example_gives_evidence() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["y + x^2", "x + y + y^2"]);
    let out = vfcert(&["certify", s(&f), "--point", "0,0", "--max-degree", "3", "--max-height", "50", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["verdict"]["kind"], "EVIDENCE_FOR_MINIMALITY");
}

#[test]
fn certify_json_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["y + x^2", "x + y + y^2"]);
    let args = ["certify", s(&f), "--point", "0,0", "--seed", "7", "--json"];
    let first = vfcert(&args);
    let second = vfcert(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn certify_golden_field_fails_hypothesis_b() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["y", "x + y"]);
    let out = vfcert(&["certify", s(&f), "--point", "0,0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let j = json_of(&out);
    assert_eq!(j["verdict"]["kind"], "HYPOTHESIS_B_FAILS");
    assert_eq!(j["verdict"]["witness"]["g"], "x^2 + x*y - y^2");
}

#[test]
fn resonance_of_diagonal_field_is_negative() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["x", "2*y"]);
    let out = vfcert(&["resonance", s(&f), "--point", "0,0", "--max-height", "50", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let j = json_of(&out);
    assert_eq!(j["status"], "RESONANT");
    assert_eq!(j["witness"], serde_json::json!([2, -1]));
}

#[test]
fn homogenize_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["y + x^2", "x + y + y^2"]);
    let out = vfcert(&["homogenize", s(&f), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let hj: HomogeneousFieldJson = serde_json::from_slice(&out.stdout).unwrap();
    let v = VectorField::parse(&["x", "y"], &["y + x^2", "x + y + y^2"]).unwrap();
    assert_eq!(HomogeneousField::from_json(&hj).unwrap(), homogenize_affine(&v, 2).unwrap());

    let h = write(&dir, "h.json", std::str::from_utf8(&out.stdout).unwrap());
    for verb in [["dehomogenize", s(&h), "--json", "", ""], ["chart", s(&h), "--chart", "0", "--json"]] {
        let args: Vec<&str> = verb.iter().copied().filter(|a| !a.is_empty()).collect();
        let out = vfcert(&args);
        assert_eq!(out.status.code(), Some(0));
        let j: FieldJson = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(VectorField::from_json(&j).unwrap(), v);
    }
}

#[test]
fn prolong_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["x*y", "x - y^2"]);
    let out = vfcert(&["prolong", s(&f), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j: FieldJson = serde_json::from_slice(&out.stdout).unwrap();
    let v = VectorField::parse(&["x", "y"], &["x*y", "x - y^2"]).unwrap();
    assert_eq!(VectorField::from_json(&j).unwrap(), first_prolongation(&v).unwrap().full);
}

#[test]
fn distribution_invariance_follows_bracket() {
    let dir = TempDir::new().unwrap();
    let d = write(&dir, "d.json", r#"{"vars": ["x", "y"], "fields": [["0", "1"]]}"#);
    let diag = field_file(&dir, "diag.json", &["x", "2*y"]);
    let swap = field_file(&dir, "swap.json", &["y", "x"]);
    let yes = vfcert(&["invariant", s(&diag), "--ideal", s(&d), "--seed", "3", "--json"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(json_of(&yes)["invariance"], "INVARIANT");
    let no = vfcert(&["prolong", s(&swap), "--ideal", s(&d), "--seed", "3"]);
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn affine_ideal_invariance() {
    let dir = TempDir::new().unwrap();
    let i = write(&dir, "i.json", r#"{"vars": ["x", "y"], "generators": ["x"]}"#);
    let diag = field_file(&dir, "diag.json", &["x", "2*y"]);
    let swap = field_file(&dir, "swap.json", &["y", "x"]);
    assert_eq!(vfcert(&["invariant", s(&diag), "--ideal", s(&i)]).status.code(), Some(0));
    assert_eq!(vfcert(&["invariant", s(&swap), "--ideal", s(&i)]).status.code(), Some(1));
}

#[test]
fn jet_ode_of_rotation() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["-y", "x"]);
    let out = vfcert(&["jet-ode", s(&f), "--observable", "x", "--order", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["principal"], true);
    assert_eq!(j["generators"], serde_json::json!(["Y0 + Y2"]));
}

#[test]
fn codim1_conormal_has_divergence_cofactor() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["x^2", "x*y + y"]);
    let w = write(&dir, "w.json", r#"{"vars": ["x", "y"], "components": ["x*y + y", "-x^2"]}"#);
    let out = vfcert(&["codim1", s(&f), "--oneform", s(&w), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["cofactor"], "3*x + 1");
    assert_eq!(j["tangency_identity"], true);
}

#[test]
fn singular_point_checks() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["y + x^2", "x + y + y^2"]);
    assert_eq!(vfcert(&["singular", s(&f), "--point", "0,0"]).status.code(), Some(0));
    let out = vfcert(&["singular", s(&f), "--point", "1,1", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["component"], 1);
    let lin = vfcert(&["linpart", s(&f), "--point", "0,0", "--json"]);
    assert_eq!(json_of(&lin)["matrix"], serde_json::json!([["0", "1"], ["1", "1"]]));
}

#[test]
fn pole_order_of_rational_field() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["1/x^2", "y/x"]);
    let out = vfcert(&["pole-order", s(&f), "--hyperplane", "x", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["pole_order"], 2);
}

#[test]
fn usage_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["x", "y"]);
    assert_eq!(vfcert(&["certify", s(&f)]).status.code(), Some(64));
    assert_eq!(vfcert(&["bracket", s(&f)]).status.code(), Some(64));
    assert_eq!(vfcert(&["frobnicate", s(&f)]).status.code(), Some(64));
    assert_eq!(vfcert(&["darboux", s(&f), "--max-degree", "many"]).status.code(), Some(64));
}

#[test]
fn parse_errors_exit_65() {
    let dir = TempDir::new().unwrap();
    let bad = field_file(&dir, "bad.json", &["x +", "y"]);
    assert_eq!(vfcert(&["darboux", s(&bad)]).status.code(), Some(65));
    let junk = write(&dir, "junk.json", "not json");
    assert_eq!(vfcert(&["structure", s(&junk)]).status.code(), Some(65));
    let f = field_file(&dir, "f.json", &["x", "y"]);
    assert_eq!(vfcert(&["linpart", s(&f), "--point", "0,zero"]).status.code(), Some(65));
}

#[test]
fn budget_exhaustion_exits_2() {
    let dir = TempDir::new().unwrap();
    let f = field_file(&dir, "f.json", &["y + x^2", "x + y + y^2"]);
    assert_eq!(vfcert(&["darboux", s(&f), "--budget", "1"]).status.code(), Some(2));
    let out = vfcert(&["certify", s(&f), "--point", "0,0", "--budget", "1", "--json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["verdict"]["kind"], "INCONCLUSIVE");
}
