use std::process::{Command, Output};

fn realk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realk")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = realk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn code(args: &[&str]) -> i32 {
    realk(args).status.code().unwrap()
}

#[test]
fn pi_examples() {
    assert_eq!(stdout(&["pi", "--space", "cno", "--k", "0", "--n", "3"]), "(Z/2)^7");
    assert_eq!(stdout(&["pi", "--space", "bcomu", "--k", "5"]), "0");
    assert_eq!(stdout(&["pi", "--space", "repo", "--k", "3", "--n", "5"]), "0");
    assert_eq!(stdout(&["pi", "--space", "bcomu", "--k", "6"]), "Z^3");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["pi", "--space", "cno", "--k", "1", "--n", "4", "--format", "json"])).unwrap();
    assert_eq!(v["z2_rank"], 4);
}

#[test]
fn mul_examples() {
    assert_eq!(stdout(&["mul", "--ring", "kr", "w", "w"]), "4*U");
    assert_eq!(stdout(&["mul", "--ring", "bcom-kr", "a*U*yb5", "U*vb*yb3"]), "a*U^2*vb^2*yb7");
    assert_eq!(stdout(&["mul", "--ring", "ku", "y1", "y1"]), "v*y1 + 2*y2");
    assert_eq!(stdout(&["mul", "--ring", "hz", "a", "2*u"]), "0");
    assert_eq!(stdout(&["mul", "--ring", "kr", "a", "w"]), "0");
}

#[test]
fn coefficient_groups() {
    assert_eq!(stdout(&["coeff", "--ring", "kr", "--p", "4", "--q", "-5"]), "Z/2");
    assert_eq!(stdout(&["coeff", "--ring", "hz", "--p", "2", "--q", "-2"]), "Z");
    assert_eq!(code(&["coeff", "--ring", "kr", "--p", "1", "--q", "3"]), 3);
}

#[test]
fn table_reproduces_low_degrees() {
    let md = stdout(&["table", "--space", "cno", "--kmax", "7", "--nmax", "6", "--format", "markdown"]);
    let rows: Vec<&str> = md.lines().collect();
    assert_eq!(rows.len(), 10);
    assert!(rows[2].starts_with("| 0 | Z/2 | (Z/2)^3 | (Z/2)^7 |"));
    assert!(rows[6].ends_with("| Z^15 + (Z/2)^7 |"));
    let csv = stdout(&["table", "--space", "repo", "--kmax", "2", "--nmax", "3", "--format", "csv"]);
    assert_eq!(csv.lines().next(), Some("k,n=1,n=2,n=3"));
}

#[test]
fn stability() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["stability", "--family", "cno", "--k", "8"])).unwrap();
    assert_eq!(v["stable"], false);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["stability", "--family", "cno", "--k", "7"])).unwrap();
    assert_eq!(v["stable_from"], 5);
    assert_eq!(code(&["stability", "--family", "bcomo", "--k", "1"]), 2);
}

#[test]
fn spectral_roundtrip() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["spectral", "roundtrip", "--n", "3", "--dim", "12", "--seed", "7"])).unwrap();
    assert!(v["max_error"].as_f64().unwrap() <= 1e-8);
    assert_eq!(v["label_mismatches"], 0);
}

#[test]
fn spectral_files() {
    let dir = std::env::temp_dir().join(format!("realk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let t = dir.join("t.json");
    let c = dir.join("c.json");
    let (t, c) = (t.to_str().unwrap(), c.to_str().unwrap());
    stdout(&["spectral", "random", "--n", "2", "--dim", "6", "--real", "--seed", "5", "-o", t]);
    let kappa: serde_json::Value = serde_json::from_str(&stdout(&["spectral", "kappa", t])).unwrap();
    assert_eq!(kappa["invariant"].as_array().unwrap().len(), 3);
    stdout(&["spectral", "decompose", t, "-o", c]);
    let back: serde_json::Value = serde_json::from_str(&stdout(&["spectral", "realize", c])).unwrap();
    assert_eq!(back["dim"], 6);
    let real: serde_json::Value = serde_json::from_str(&stdout(&["spectral", "realize", "--real", c])).unwrap();
    assert!(real["matrices"][0].get("im").is_none());
    // a complex tuple has no component invariant
    stdout(&["spectral", "random", "--n", "2", "--dim", "6", "--seed", "5", "-o", t]);
    assert_eq!(code(&["spectral", "kappa", t]), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["mul", "--ring", "kr", "w*", "w"]), 2);
    assert_eq!(code(&["pi", "--space", "cno", "--k", "1"]), 2);
    assert_eq!(code(&["pi", "--space", "cno", "--k", "0", "--n", "65"]), 2);
    assert_eq!(code(&["pi", "--space", "nope", "--k", "1"]), 2);
    assert_eq!(code(&["spectral", "kappa", "/nonexistent/tuple.json"]), 5);
    assert_eq!(code(&["--tol-commute", "-1", "pi", "--space", "bcomu", "--k", "2"]), 2);
}

#[test]
fn deterministic_output() {
    let args = ["spectral", "random", "--n", "3", "--dim", "7", "--seed", "42"];
    assert_eq!(realk(&args).stdout, realk(&args).stdout);
    let args = ["spectral", "roundtrip", "--n", "2", "--dim", "9", "--seed", "3", "--trials", "5"];
    assert_eq!(realk(&args).stdout, realk(&args).stdout);
}
