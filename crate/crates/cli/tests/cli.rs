use std::io::Write;

use serde_json::Value;
use tempfile::NamedTempFile;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("kodaira").chain(args.iter().copied());
    let code = kodaira_cli::run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    let v = serde_json::from_str(&text).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"));
    (code, v)
}

fn temp_file(contents: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

const CURVE_50B1: &str = r#"{"base":{"kind":"rational"},"ainv":["1","1","1","-3","1"]}"#;
const CURVE_150A4: &str = r#"{"base":{"kind":"rational"},"ainv":["1","0","0","-28","272"]}"#;

#[test]
fn classify_triple_example() {
    let (code, v) = run_json(&["classify-triple", "--vc4", "1", "--vc6", "1", "--vdelta", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], "II");
    assert_eq!(v["semistability_degree"], 6);
}

#[test]
fn classify_triple_accepts_infinite_valuation() {
    let (code, v) = run_json(&["classify-triple", "--vc4", "inf", "--vc6", "1", "--vdelta", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], "II");
}

#[test]
fn allowed_types_example() {
    let (code, v) = run_json(&["allowed-types", "--p", "7", "--n", "1", "--vkp", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!(["II"]));
}

#[test]
fn theorem1_and_lfunction() {
    let (_, v) = run_json(&["theorem1", "--p", "17", "--vkp", "1", "--m", "12"]);
    assert_eq!(v["purely_additive_excluded"], true);
    let (_, v) = run_json(&["lfunction", "--x", "12"]);
    assert_eq!(v["l"], 4);
}

#[test]
fn surface_bound_and_supersingular() {
    let (_, v) = run_json(&["surface-bound", "--p", "11"]);
    assert_eq!(v["class"], "purely_additive_implies_pot_good");
    let (_, v) = run_json(&["supersingular", "--type", "III", "--p", "7"]);
    assert_eq!(v["potentially_supersingular"], "true");
}

#[test]
fn basechange_escalates() {
    let (code, v) = run_json(&[
        "basechange", "--vc4", "1", "--vc6", "1", "--vdelta", "2", "--degree", "5", "--p", "7",
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["before"]["type"], "II");
    assert_eq!(v["after"]["type"], "II*");
}

#[test]
fn invariants_and_classify_from_file() {
    let f = temp_file(CURVE_50B1);
    let path = f.path().to_str().unwrap();
    let (code, v) = run_json(&["invariants", path]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["discriminant"], "-800");
    let (code, v) = run_json(&["classify", path, "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["type"], "II");
}

#[test]
fn order_and_point_analysis() {
    let f = temp_file(CURVE_150A4);
    let path = f.path().to_str().unwrap();
    let (code, v) = run_json(&["order", path, "--point", "2,14"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["order"], 10);
    let (code, text) = run(&["point-analysis", path, "--p", "5", "--point", "2,14"]);
    assert_eq!(code, 0, "{text}");
    assert!(text.contains("nonsingular_image"));
}

#[test]
fn family_x1_5_echoes_provenance() {
    let (code, v) = run_json(&["family", "x1-5", "--s", "3", "--t", "1", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["provenance"]["family"], "x1-5");
    assert_eq!(v["classification"]["type"], "II");
    assert_eq!(v["classification"]["triple"], serde_json::json!([1, 1, 2]));
}

#[test]
fn sweep_passes_with_exit_zero_and_csv_header() {
    let spec = temp_file(r#"{"family":"x1-5","p":5,"e":1,"s":[1,6],"t":[1,6],"assertion":"prop4.1.i"}"#);
    let path = spec.path().to_str().unwrap();
    let (code, v) = run_json(&["sweep", path, "--summary"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let (code, csv) = run(&["--csv", "sweep", path]);
    assert_eq!(code, 0);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("family,s,t,vc4,vc6,vdelta,type,n,component_group,verdict"));
    assert_eq!(lines.count(), 36);
}

#[test]
fn sweep_with_wrong_assertion_exits_one() {
    // at e = 3 the rows are of type I0* and III*, outside what e = 1 allows
    let spec = temp_file(r#"{"family":"x1-5","p":5,"e":3,"s":[1,6],"t":[1,6],"assertion":"prop4.1.i"}"#);
    let (code, v) = run_json(&["sweep", spec.path().to_str().unwrap(), "--summary"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn verify_claim_gcd_reports_printed_typo() {
    let (code, v) = run_json(&["verify-claim-gcd"]);
    assert_eq!(code, 1);
    assert_eq!(v["verdict"], "fail");
    assert_eq!(v["gcd_is_one"], true);
    assert_eq!(v["identity_holds"], true);
    let mism = v["coefficient_mismatches"].as_array().unwrap();
    assert_eq!(mism.len(), 1);
    assert_eq!(mism[0]["computed"], "64717056");
}

#[test]
fn errors_are_json_with_exit_two() {
    for args in [
        vec!["bogus"],
        vec!["classify-triple", "--vc4", "x", "--vc6", "1", "--vdelta", "2"],
        vec!["classify-triple", "--vc4", "0", "--vc6", "0", "--vdelta", "0", "--extra"],
        vec!["invariants", "/nonexistent/curve.json"],
        vec!["surface-bound", "--p", "3"],
    ] {
        let (code, v) = run_json(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"]["kind"].is_string(), "{args:?}: {v}");
        assert!(v["error"]["message"].is_string());
    }
}

#[test]
fn singular_curve_is_rejected() {
    let f = temp_file(r#"{"base":{"kind":"rational"},"ainv":["0","0","0","0","0"]}"#);
    let (code, v) = run_json(&["invariants", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(v["error"].is_object());
}

#[test]
fn output_is_byte_identical_across_runs() {
    let spec = temp_file(r#"{"family":"x1-13","p":13,"e":2,"n":[1,5],"assertion":"remark-x1-13","check_order":true}"#);
    let path = spec.path().to_str().unwrap();
    for args in [
        vec!["sweep", path],
        vec!["--csv", "sweep", path],
        vec!["verify-claim-gcd"],
        vec!["surface-bound", "--p", "13"],
    ] {
        assert_eq!(run(&args), run(&args), "{args:?}");
    }
}
