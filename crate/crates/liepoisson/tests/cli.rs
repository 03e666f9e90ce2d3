use std::process::Command;

use liepoisson::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["liepoisson"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_json(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("liepoisson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn entries(m: &Value) -> Vec<(f64, f64)> {
    m["data"].as_array().unwrap().iter().map(|v| (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())).collect()
}

#[test]
fn leaf_coords_su2() {
    let (code, out, _) = call(&["leaf", "coords", "--n", "2", "--word", "1", "--zeta", "1+0i"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    let l = entries(&v["l"]);
    let want = [(1.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 0.0)];
    for (a, b) in l.iter().zip(want) {
        assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12, "{l:?}");
    }
}

#[test]
fn leaf_density_su2_is_one() {
    let (code, out, _) = call(&["leaf", "density", "--n", "2", "--word", "1", "--zeta", "3+4i"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!((v["haar"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["coeffs"][0].as_f64().unwrap() - 0.5 / 26.0).abs() < 1e-15);
    assert!(v.get("l").is_none());
}

#[test]
fn leaf_empty_word_gives_identity() {
    let (code, out, _) = call(&["leaf", "coords", "--n", "3"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["a"], serde_json::json!([1.0, 1.0, 1.0]));
    assert_eq!(v["haar"], 1.0);
    let l = entries(&v["l"]);
    for (k, e) in l.iter().enumerate() {
        let want = if k % 4 == 0 { 1.0 } else { 0.0 };
        assert_eq!(*e, (want, 0.0));
    }
}

#[test]
fn leaf_momentum_lists_torus_pairings() {
    let (code, out, _) = call(&["leaf", "momentum", "--n", "3", "--word", "1 2 1", "--zeta", "1+i,2,-i"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["momentum"].as_array().unwrap().len(), 2);
}

#[test]
fn leaf_rejects_bad_words() {
    assert_eq!(call(&["leaf", "form", "--n", "3", "--word", "1 1", "--zeta", "1,1"]).0, EXIT_USAGE);
    assert_eq!(call(&["leaf", "form", "--n", "3", "--word", "1", "--zeta", "1,1"]).0, EXIT_USAGE);
    assert_eq!(call(&["leaf", "form", "--n", "2", "--word", "2", "--zeta", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["leaf", "form", "--n", "2", "--word", "1", "--zeta", "one"]).0, EXIT_USAGE);
}

#[test]
fn factor_iwasawa_identity() {
    let p = temp_json("id.json", r#"{"kind":"grass","p":1,"q":1,"rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#);
    let (code, out, _) = call(&["factor", "iwasawa", "--instance", "grass:1,1", "--input", &p]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["l", "a", "u"] {
        assert_eq!(entries(&v[key]), vec![(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], "{key}");
    }
    assert_eq!(v["residual"], 0.0);
}

#[test]
fn factor_iwasawa_reconstructs() {
    let p = temp_json("g.json", r#"{"kind":"grass","p":1,"q":1,"rows":2,"cols":2,"data":[[2,0],[1,1],[0,0],[0.5,0]]}"#);
    let (code, out, _) = call(&["factor", "iwasawa", "--input", &p]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["instance"], "grass:1,1");
}

#[test]
fn factor_group_pairs_and_cells() {
    // first block is the swap (off the top cell), second is the identity
    let p = temp_json(
        "pair.json",
        r#"{"kind":"group","n":2,"rows":2,"cols":2,"data":[[0,0],[1,0],[-1,0],[0,0]],"block2":[[1,0],[0,0],[0,0],[1,0]]}"#,
    );
    let (code, out, _) = call(&["factor", "bruhat-cell", "--input", &p]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cells"], serde_json::json!(["1", ""]));
    let (code, _, err) = call(&["factor", "birkhoff", "--input", &p]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("top stratum"), "{err}");
    let (code, out, _) = call(&["factor", "cartan-embed", "--input", &p]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["image"]["kind"], "group");
}

#[test]
fn factor_rejects_singular_and_malformed() {
    let p = temp_json("s.json", r#"{"kind":"plain","rows":2,"cols":2,"data":[[1,0],[2,0],[2,0],[4,0]]}"#);
    let (code, _, err) = call(&["factor", "iwasawa", "--instance", "grass:1,1", "--input", &p]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("singular"), "{err}");
    let q = temp_json("bad.json", "{");
    assert_eq!(call(&["factor", "iwasawa", "--instance", "grass:1,1", "--input", &q]).0, EXIT_USAGE);
    let r = temp_json("plain.json", r#"{"kind":"plain","rows":2,"cols":2,"data":[[1,0],[0,0],[0,0],[1,0]]}"#);
    assert_eq!(call(&["factor", "iwasawa", "--input", &r]).0, EXIT_USAGE);
    assert_eq!(call(&["factor", "iwasawa", "--instance", "group:2", "--input", &r]).0, EXIT_USAGE);
    assert_eq!(call(&["factor", "qr", "--input", &r]).0, EXIT_USAGE);
}

#[test]
fn verify_reports_and_exit_codes() {
    let (code, out, _) = call(&["verify", "--suite", "core", "--instance", "group:2", "--samples", "5", "--seed", "7"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["suite"], "core");
    assert_eq!(v["instance"], "group:2");
    assert_eq!(v["pass"], true);
    for key in ["checks", "params", "seconds"] {
        assert!(v.get(key).is_some(), "{key}");
    }

    // a zero per-check tolerance cannot be met by a finite-difference check
    let (code, out, err) =
        call(&["verify", "--suite", "hamiltonian", "--instance", "grass:1,1", "--samples", "3", "--seed", "7", "--tol", "closedness=0"]);
    assert_eq!(code, EXIT_FAIL);
    assert!(serde_json::from_str::<Value>(&out).is_ok());
    assert!(!err.is_empty());

    assert_eq!(call(&["verify", "--suite", "nope", "--instance", "group:2", "--seed", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--suite", "core", "--instance", "group:2"]).0, EXIT_USAGE);
    assert_eq!(call(&["verify", "--suite", "core", "--instance", "grass:0,1", "--seed", "1"]).0, EXIT_USAGE);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite", "factorization", "--instance", "grass:2,1", "--samples", "4", "--seed", "11"];
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v["seconds"] = Value::Null;
        v
    };
    assert_eq!(strip(call(&args).1), strip(call(&args).1));
}

#[test]
fn binary_keeps_stdout_pure_json() {
    let out = Command::new(env!("CARGO_BIN_EXE_liepoisson"))
        .args(["leaf", "density", "--n", "2", "--word", "1", "--zeta", "0.5-0.25i"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());

    let out = Command::new(env!("CARGO_BIN_EXE_liepoisson")).args(["verify", "--suite", "core"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn tol_scale_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_liepoisson"))
        .env("LIEPOISSON_TOL_SCALE", "-3")
        .args(["verify", "--suite", "core", "--instance", "grass:1,1", "--samples", "1", "--seed", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));

    let out = Command::new(env!("CARGO_BIN_EXE_liepoisson"))
        .env("LIEPOISSON_TOL_SCALE", "2")
        .args(["verify", "--suite", "core", "--instance", "grass:1,1", "--samples", "1", "--seed", "1"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["tol_scale"], 2.0);
}
