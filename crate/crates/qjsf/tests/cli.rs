//! End-to-end checks of the `qjsf` binary: output values, formats, and exit
//! codes.

use std::process::Command;

fn qjsf(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qjsf"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn interp_json_golden_values() {
    let out = qjsf(&["interp", "--mu", "2", "--q", "1/2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let coeffs = v["coeffs"].as_array().unwrap();
    let lookup = |idx: &str| {
        coeffs
            .iter()
            .find(|c| c["index"] == idx)
            .unwrap()["value"]
            .as_str()
            .unwrap()
            .to_string()
    };
    assert_eq!(lookup("2"), "1");
    assert_eq!(lookup("1"), "-4");
    assert_eq!(lookup("-"), "16/3");
}

#[test]
fn sigma_value() {
    let out = qjsf(&["sigma", "--mu", "1,1", "--nu", "1", "--q", "1/3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.trim().ends_with("= -1/2"), "{text}");
}

#[test]
fn json_round_trip() {
    let out = qjsf(&["interp", "--mu", "2,1", "--q", "2/5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let exp = qjsf::interp::SchurExpansion::from_json(&v).unwrap();
    let ctx = qjsf::qseries::QContext::new(qjsf::Scalar::rat(2, 5)).unwrap();
    assert_eq!(exp, qjsf::interp::interp_expansion(&"2,1".parse().unwrap(), &ctx));
}

#[test]
fn inadmissible_parameters_exit_code_2() {
    let out = qjsf(&["gram", "-N", "1", "--gamma", "5", "--delta", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("inadmissible"), "{err}");
}

#[test]
fn parse_error_exit_code_1() {
    let out = qjsf(&["eval", "--mu", "not-a-partition", "-N", "1", "--x", "1/2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_suite_golden_passes() {
    let out = qjsf(&["verify", "--suite", "golden"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn gram_csv_header() {
    let out = qjsf(&[
        "gram", "-N", "1", "-K", "3", "--max-size", "1", "--gamma", "3", "--delta", "7/2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("lambda,mu,value_re,value_im,tail_bound"), "{text}");
}
