use flopcheck_core::builtin::Builtins;
use flopcheck_core::minus_side::Star;
use flopcheck_core::report::{verify_all, verify_strata, verify_windows, Report, Status, REPORT_SCHEMA};
use flopcheck_core::IntegerWeight;
use serde_json::{json, Value};

fn failing(r: &Report) -> Vec<&str> {
    r.failures().map(|c| c.id.as_str()).collect()
}

fn schema_valid(report: &Report) {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let instance: Value = serde_json::from_str(&report.to_json()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
}

#[test]
fn builtin_run_fails_only_on_lascoux_3_per_degree() {
    let b = Builtins::load().unwrap();
    let r = verify_all(&b).unwrap();
    assert_eq!(failing(&r), ["resolutions/lascoux-3"]);
    let lascoux = &r.get("resolutions/lascoux-3").unwrap().payload;
    assert_eq!(lascoux["euler_pass"], json!(true));
    assert_eq!(lascoux["per_degree_pass"], json!(false));
    assert_eq!(r.summary.total, r.checks.len());
    assert_eq!(r.summary.pass + r.summary.fail + r.summary.info, r.summary.total);
    schema_valid(&r);
}

#[test]
fn deterministic_bytes() {
    let b = Builtins::load().unwrap();
    let a = verify_all(&b).unwrap().to_json();
    let c = verify_all(&b).unwrap().to_json();
    assert_eq!(a, c);
    let back: Report = serde_json::from_str(&a).unwrap();
    assert_eq!(back.to_json(), a);
}

#[test]
fn fractions_and_weights_encoding() {
    let b = Builtins::load().unwrap();
    let mut r = Report::new(json!({}));
    verify_strata(&b, &mut r);
    let rec = r.get("kn/minus/1,1,-4").unwrap();
    assert_eq!(rec.payload["solved"]["value_sq"], json!({ "num": 2, "den": 9 }));
    assert_eq!(rec.payload["solved"]["minimizer"], json!([1, 1, -4]));
    let spade = verify_all(&b).unwrap();
    let w = &spade.get("windows/plus/-7,-4,-1").unwrap().payload["enumerated"];
    assert!(w.as_array().unwrap().iter().all(|x| x.is_array()));
}

#[test]
fn corrupted_hl_example_is_pinpointed() {
    let mut b = Builtins::load().unwrap();
    b.hl_examples[0].expected[0] = IntegerWeight::new(vec![9, 9, 9]).unwrap();
    let mut r = Report::new(json!({}));
    verify_windows(&b, &mut r);
    assert_eq!(failing(&r), ["windows/plus/-7,-4,-1"]);
}

#[test]
fn corrupted_stratum_is_pinpointed() {
    let mut b = Builtins::load().unwrap();
    let s = b.strata.iter_mut().find(|s| s.weight == [1, 0, -2]).unwrap();
    s.weight = [1, 0, -3];
    let mut r = Report::new(json!({}));
    verify_strata(&b, &mut r);
    assert_eq!(failing(&r), ["kn/minus/1,0,-3"]);
}

#[test]
fn corrupted_window_weight_is_pinpointed() {
    let mut b = Builtins::load().unwrap();
    let spade = b.windows.get_mut(&Star::Spade).unwrap();
    spade.weights[0] = IntegerWeight::new(vec![4, 0, 0]).unwrap();
    let r = verify_all(&b).unwrap();
    let f = failing(&r);
    assert!(f.contains(&"tilting/xplus/spade"), "{f:?}");
    assert!(f.contains(&"pairing/spade-club"), "{f:?}");
    assert!(f.iter().all(|id| id.contains("spade") || *id == "resolutions/lascoux-3"), "{f:?}");
    let rec = r.get("tilting/xplus/spade").unwrap();
    assert_eq!(rec.status, Status::Fail);
    assert!(!rec.payload["witnesses"].as_array().unwrap().is_empty());
    schema_valid(&r);
}
