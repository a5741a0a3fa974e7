use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn flopcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flopcheck")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json_report(args: &[&str], path: &Path) -> (i32, Value) {
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--json", p]);
    let o = flopcheck(&full);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    (code(&o), v)
}

const SETS: &str = "\
set o gr(2,5)
  u=[0,0] q=[0,0,0] mult=1
end

set tangent-pair gr(2,5)
  u=[0,0] q=[0,0,0] mult=1
  u=[1,0] q=[0,0,0] mult=1
end

set reversed gr(2,5)
  u=[1,1] q=[0,0,0] mult=1
  u=[0,0] q=[0,0,0] mult=1
end

set bad gr(3,5)
  u=[0,0,0] q=[0,0] mult=1
  u=[5,0,0] q=[0,0] mult=1
end
";

#[test]
fn tilting_spade_passes() {
    let o = flopcheck(&["tilting", "check", "--model", "xplus", "--window", "spade"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("spade on xplus: pretilting"));
}

#[test]
fn minus_window_has_six_weights() {
    let o = flopcheck(&["windows", "enumerate", "--side", "minus", "--w=-7,-5,-2"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[6], "6 weights");
    assert!(lines.contains(&"[2,2,2]".to_string()));
}

#[test]
fn bwb_acyclic() {
    let o = flopcheck(&["bwb", "cohom", "gr(2,5)", "u=[0,0]", "q=[3,3,3]"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "Acyclic");
    let o = flopcheck(&["bwb", "cohom", "gr(2,5) u=[1,1] q=[0,0,0]"]);
    assert_eq!(stdout(&o).trim(), "H^0 = V([1,1,0,0,0]), dim 10");
}

#[test]
fn queries_and_checks_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let sets = dir.path().join("sets.txt");
    std::fs::write(&sets, SETS).unwrap();
    let s = sets.to_str().unwrap();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["lr", "mult", "2,1", "1"], 0),
        (vec!["weyl", "dim", "2,1,0"], 0),
        (vec!["ext-total", "--model", "xminus", "--sets", s, "--left", "o", "--right", "o", "--cutoff", "3"], 0),
        (vec!["tilting", "check", "--model", "xplus", "--window", "kapranov"], 0),
        (vec!["tilting", "check", "--model", "xplus", "--sets", s, "--set", "bad"], 1),
        (vec!["tilting", "check", "--model", "xminus", "--window", "spade"], 2),
        (vec!["suite", "minus-vanishing"], 0),
        (vec!["euler", "compare", "--star", "club", "--max-l", "3"], 0),
        (vec!["windows", "member", "--chi", "5,5,5", "--side", "plus", "--w=-7,-4,-1"], 0),
        (vec!["kn", "solve", "--character", "plus", "--support", "q1,q2,q3"], 0),
        (vec!["kn", "strata", "--side", "plus"], 0),
        (vec!["collections", "check", "--name", "kapranov-gr35"], 0),
        (vec!["collections", "check", "--name", "negative-control"], 0),
        (vec!["collections", "check", "--sets", s, "--set", "tangent-pair"], 0),
        (vec!["collections", "check", "--sets", s, "--set", "reversed"], 1),
        (vec!["collections", "resolve", "--name", "lascoux-1"], 0),
        (vec!["collections", "resolve", "--name", "lascoux-3"], 1),
        (vec!["collections", "resolve", "--name", "lascoux-3", "--twists=-2..3"], 0),
        (vec!["nonsense"], 2),
        (vec!["windows", "enumerate", "--side", "plus", "--w=1,2"], 2),
        (vec!["lr", "mult", "1,2", "1"], 2),
        (vec!["collections", "check", "--name", "nope"], 2),
        (vec!["ext-total", "--sets", "/nonexistent", "--left", "a", "--right", "b"], 2),
        (vec!["euler", "compare", "--star", "joker"], 2),
    ];
    for (args, expected) in cases {
        let o = flopcheck(&args);
        assert_eq!(code(&o), expected, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn json_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (c, v) = json_report(&["kn", "solve", "--character", "minus", "--support", "u3,q3"], &path);
    assert_eq!(c, 0);
    assert_eq!(v["tool"], "flopcheck");
    assert_eq!(v["schema_version"], 1);
    let payload = &v["checks"][0]["payload"];
    assert_eq!(payload["value_sq"], serde_json::json!({ "num": 2, "den": 9 }));
    assert_eq!(payload["minimizer"], serde_json::json!([1, 1, -4]));

    let (c, v) = json_report(&["euler", "compare", "--star", "spade", "--max-l", "8"], &path);
    assert_eq!(c, 0);
    let rec = &v["checks"][0];
    assert_eq!(rec["id"], "euler/spade");
    assert_eq!(rec["status"], "pass");
    assert_eq!(rec["payload"]["plus"].as_array().unwrap().len(), 9);
    assert_eq!(rec["payload"]["plus"], rec["payload"]["minus"]);
}

#[test]
fn verify_all_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = flopcheck(&["verify-all", "--json", a.to_str().unwrap()]);
    // The only failing record is the per-degree check of lascoux-3.
    assert_eq!(code(&o), 1);
    let o = Command::new(env!("CARGO_BIN_EXE_flopcheck"))
        .env("FLOPCHECK_THREADS", "1")
        .args(["verify-all", "--json", b.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["resolutions/lascoux-3"]);
    assert_eq!(v["summary"]["fail"], 1);
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_flopcheck"))
        .env("FLOPCHECK_THREADS", "zero")
        .args(["weyl", "dim", "1,0"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}
