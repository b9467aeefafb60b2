use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use subalg::json::condition_from_json;
use subalg::Rational;

fn session(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("sessions").join(name)
}

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_subalg"));
    c.args(args).env_remove("SUBALG_MAX_DEGREE");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args, &[]);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    serde_json::from_str(&ok(&a)).unwrap()
}

const GOLDEN: [&str; 6] = ["a1.json", "a2.json", "a3.json", "a4.json", "qn_1d.json", "qn_2d.json"];

#[test]
fn golden_sessions_exit_zero() {
    for name in GOLDEN {
        let p = session(name);
        let p = p.to_str().unwrap();
        for cmd in ["build", "codim", "spectrum", "member"] {
            ok(&[cmd, p]);
        }
    }
}

#[test]
fn a1_basis_and_non_member() {
    let p = session("a1.json");
    let p = p.to_str().unwrap();
    let b = json(&["build", p]);
    assert_eq!(b["basis"], serde_json::json!(["x1^3", "x1^4", "x1^5"]));
    assert_eq!(b["codim"], 2);
    let m = json(&["member", p, "x1"]);
    assert_eq!(m[0]["member"], false);
    assert_eq!(m[0]["remainder"], "x1");
}

#[test]
fn a3_generators_are_members() {
    let p = session("a3.json");
    let b = json(&["build", p.to_str().unwrap()]);
    assert_eq!(b["levels"].as_array().unwrap().len(), 2);
    let m = json(&["member", p.to_str().unwrap()]);
    let rows = m.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["member"] == true));
}

#[test]
fn a4_spectrum_and_clusters() {
    let s = json(&["spectrum", session("a4.json").to_str().unwrap()]);
    assert_eq!(s["points"], serde_json::json!([["1", "-3", "2"], ["1", "0", "-1"], ["3", "2", "5"]]));
    assert_eq!(
        s["clusters"],
        serde_json::json!([[["1", "-3", "2"], ["3", "2", "5"]], [["1", "0", "-1"]]])
    );
}

#[test]
fn derivation_basis_round_trips() {
    let p = session("a4.json");
    let d = json(&["derivations", p.to_str().unwrap(), "3,2,5"]);
    assert_eq!(d["dim"], 6);
    for c in d["basis"].as_array().unwrap() {
        let parsed = condition_from_json::<Rational>(c, 3).unwrap();
        assert_eq!(subalg::json::condition_to_json(&parsed), *c);
    }
}

#[test]
fn verify_main_and_qn_pass() {
    let p = session("a4.json");
    let r = json(&["verify-main", p.to_str().unwrap(), "1,0,-1"]);
    assert_eq!(r["report"]["pass"], true);
    let q = json(&["qn", "--points", "0;1", "--N", "2"]);
    assert_eq!(q["report"]["pass"], true);
    assert_eq!(q["codim"], 3);
}

#[test]
fn output_is_deterministic() {
    let p = session("a4.json");
    let p = p.to_str().unwrap();
    for args in [vec!["build", p], vec!["--json", "derivations", p, "3,2,5"], vec!["verify-main", p, "3,2,5"]] {
        assert_eq!(ok(&args), ok(&args));
    }
}

#[test]
fn order_flag_overrides_session() {
    let b = json(&["--order", "lex", "build", session("a3.json").to_str().unwrap()]);
    assert_eq!(b["order"], "lex");
    assert_eq!(b["codim"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(run(&["codim", missing.to_str().unwrap()], &[]).status.code(), Some(1));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"n\": 1, \"conditions\": [{\"type\": \"nope\"}]}").unwrap();
    assert_eq!(run(&["codim", garbage.to_str().unwrap()], &[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], &[]).status.code(), Some(1));

    // f''(0) alone is not a derivation of K[x]
    let invalid = dir.path().join("invalid.json");
    std::fs::write(
        &invalid,
        r#"{"n": 1, "conditions": [{"type": "derivation", "point": ["0"], "terms": [{"coeff": "1", "partials": [1, 1]}]}]}"#,
    )
    .unwrap();
    let o = run(&["build", invalid.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("level 0"));

    let wrong = dir.path().join("wrong.json");
    let mut s: Value = serde_json::from_str(&std::fs::read_to_string(session("a1.json")).unwrap()).unwrap();
    s["generators"] = serde_json::json!(["x^3", "x"]);
    std::fs::write(&wrong, s.to_string()).unwrap();
    let o = run(&["--json", "build", wrong.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["pass"], false);
}

#[test]
fn max_degree_env_caps_generator_completion() {
    let p = session("a4.json");
    let o = run(&["build", p.to_str().unwrap()], &[("SUBALG_MAX_DEGREE", "1")]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["build", p.to_str().unwrap()], &[("SUBALG_MAX_DEGREE", "many")]);
    assert_eq!(o.status.code(), Some(1));
}
