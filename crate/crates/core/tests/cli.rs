use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::{json, Value};

const U23_ALL: &str = r#"{"matroid":{"kind":"circuits","n":3,"circuits":[[1,2,3]]},"linear_class":"all"}"#;

fn run(args: &[&str], stdin: &str) -> (Value, i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_biasalg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(&text).expect("JSON report");
    (value, out.status.code().unwrap(), text)
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn dim_reports_both_sides() {
    let (report, code, _) = run(&["dim"], U23_ALL);
    assert_eq!(code, 0);
    assert_eq!(report["command"], "dim");
    assert_eq!(report["results"], json!({"nbc": [1, 3, 2], "oracle": [1, 3, 2], "match": true}));
    assert_eq!(report["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn validate_reports_the_modular_pair() {
    let input = r#"{"matroid":{"kind":"circuits","n":4,"circuits":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]},"linear_class":[[1,2,3],[1,2,4]]}"#;
    let (report, code, _) = run(&["validate", "--input", "-"], input);
    assert_eq!(code, 1);
    assert_eq!(report["results"]["linear_class_valid"], false);
    assert_eq!(report["results"]["witness"]["modular_pair"], json!([[1, 2, 3], [1, 2, 4]]));
    assert_eq!(report["results"]["witness"]["missing"], json!([1, 3, 4]));
}

#[test]
fn validate_reports_axiom_violations() {
    let input = r#"{"matroid":{"kind":"circuits","n":3,"circuits":[[1,2],[2,3]]}}"#;
    let (report, code, _) = run(&["validate"], input);
    assert_eq!(code, 1);
    assert_eq!(report["results"]["matroid_valid"], false);
}

#[test]
fn lift_of_the_empty_class() {
    let input = r#"{"matroid":{"kind":"circuits","n":3,"circuits":[[1,2,3]]},"linear_class":"empty"}"#;
    let (report, code, _) = run(&["lift"], input);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["circuits"], json!([[1, 2, 3, 4]]));
    assert_eq!(report["results"]["new_element"], 4);
}

#[test]
fn expand_cross_checks_coefficients() {
    let (report, code, _) = run(&["expand", "--set", "2,3"], U23_ALL);
    assert_eq!(code, 0);
    assert_eq!(
        report["results"]["expansion"],
        json!([{"set": [1, 2], "coefficient": -1}, {"set": [1, 3], "coefficient": 1}])
    );
    assert_eq!(report["results"]["methods_agree"], true);
    assert_eq!(report["results"]["oracle_agrees"], true);
}

#[test]
fn dual_check_and_poincare() {
    let (report, code, _) = run(&["dual-check"], U23_ALL);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["identity"], true);
    let (report, code, _) = run(&["poincare"], U23_ALL);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["polynomial"], "1 + 3t + 2t^2");
    let (report, _, _) = run(&["nbc"], U23_ALL);
    assert_eq!(report["results"]["basis"], json!([[[]], [[1], [2], [3]], [[1, 2], [1, 3]]]));
}

#[test]
fn sequence_report() {
    let (report, code, _) = run(&["sequence", "--element", "3"], U23_ALL);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["report"]["dim_deletion"], 4);
    assert_eq!(report["results"]["report"]["dim_contraction"], 2);
    let with_loop = r#"{"matroid":{"kind":"circuits","n":2,"circuits":[[1]]}}"#;
    let (report, code, _) = run(&["sequence", "--element", "2"], with_loop);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["error"]["kind"], "loop_present");
}

#[test]
fn input_errors_exit_two_with_diagnostics() {
    let (report, code, _) = run(&["dim"], "{not json");
    assert_eq!(code, 2);
    assert_eq!(report["results"]["error"]["kind"], "input");
    let bad_class = r#"{"matroid":{"kind":"circuits","n":4,"circuits":[[1,2,3],[1,2,4],[1,3,4],[2,3,4]]},"linear_class":[[1,2,3],[1,2,4]]}"#;
    let (report, code, _) = run(&["nbc"], bad_class);
    assert_eq!(code, 2);
    assert_eq!(report["results"]["error"]["kind"], "hypothesis_violated");
    let (_, code, _) = run(&["dim", "--input", "/nonexistent/problem.json"], "");
    assert_eq!(code, 2);
}

#[test]
fn characteristic_two_is_flagged() {
    let (report, code, _) = run(&["dim", "--field", "GF:2"], U23_ALL);
    assert_eq!(code, 0);
    assert_eq!(report["warnings"].as_array().unwrap().len(), 1);
    let (report, _, _) = run(&["dim", "--field", "GF:3"], U23_ALL);
    assert!(report["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let (a, _, _) = run(&["suite", "--input", "-", "--relabel-seed", "7"], U23_ALL);
    let (b, _, _) = run(&["suite", "--input", "-", "--relabel-seed", "7"], U23_ALL);
    assert_eq!(without_timing(a.clone()), without_timing(b));
    assert_eq!(a["results"]["passed"], true);
}

#[test]
fn indentation_flag() {
    let (_, _, compact) = run(&["dim", "--json-indent", "0"], U23_ALL);
    assert_eq!(compact.trim().lines().count(), 1);
    let (_, _, wide) = run(&["dim", "--json-indent", "4"], U23_ALL);
    assert!(wide.contains("\n    \"command\""));
}

/// Every check passes on the corpus except exactness of the deletion-contraction
/// sequence at an element with a parallel partner inside the class.
#[test]
fn corpus_suite() {
    let (report, code, _) = run(&["suite"], "");
    assert_eq!(code, 1);
    assert_eq!(report["results"]["case_count"], 43);
    let mut failing = Vec::new();
    for case in report["results"]["cases"].as_array().unwrap() {
        for check in case["checks"].as_array().unwrap() {
            if check["passed"] == false {
                failing.push((case["matroid"].as_str().unwrap().to_string(), case["class"].clone(), check["name"].clone()));
            }
        }
    }
    let expected = vec![
        ("u12_u12".to_string(), json!([[1, 2]]), json!("exact_sequence")),
        ("u12_u12".to_string(), json!([[3, 4]]), json!("exact_sequence")),
        ("u12_u12".to_string(), json!([[1, 2], [3, 4]]), json!("exact_sequence")),
    ];
    assert_eq!(failing, expected);
}
