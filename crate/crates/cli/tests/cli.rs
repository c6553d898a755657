use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn loophh(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_loophh"));
    c.args(args).env_remove("LOOPHH_CEILING");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn report(dir: &Path, name: &str, args: &[&str]) -> (Output, String) {
    let path = dir.join(name);
    let mut all: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    all.extend(["--report", &p]);
    let out = loophh(&all, &[]);
    let text = std::fs::read_to_string(&path).unwrap_or_default();
    (out, text)
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn operad_box_names_the_witness() {
    let dir = tempfile::tempdir().unwrap();
    let (out, text) = report(dir.path(), "o.json", &["operad-verify", "--arity", "4", "--degree", "4"]);
    assert!(out.status.success());
    let v = json(&text);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["result"]["witness"], "⟨3123⟩");
    assert_eq!(v["result"]["corrected_failures"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("⟨3123⟩ fails the uncorrected retraction"));
}

#[test]
fn homology_of_the_tetrahedron_boundary() {
    let out = loophh(&["homology", "--space", "boundary:3", "--ring", "z"], &[]);
    assert!(out.status.success());
    let v = json(&String::from_utf8(out.stdout).unwrap());
    let rows = v["result"]["table"]["rows"].as_array().unwrap();
    let bettis: Vec<u64> = rows.iter().map(|r| r["betti"].as_u64().unwrap()).collect();
    assert_eq!(bettis, vec![1, 0, 1]);
    assert!(rows.iter().all(|r| r["torsion"].as_array().unwrap().is_empty()));
}

#[test]
fn compare_on_the_sphere() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compare", "--space", "sphere:2", "--ring", "f2", "--object-cap", "2", "--nerve-cap", "2", "--degree-cap", "6"];
    let (out, text) = report(dir.path(), "c.json", &args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&text);
    assert_eq!(v["passed"], true);
    assert_eq!(v["stabilized"], true);
    for key in ["coherence_residuals", "factorization_residuals", "aw_residuals"] {
        assert!(v["result"][key].as_array().unwrap().iter().all(|r| r == 0), "{key}");
    }
}

#[test]
fn hochschild_from_a_dga_file() {
    let dir = tempfile::tempdir().unwrap();
    let dga = dir.path().join("dual.json");
    std::fs::write(
        &dga,
        r#"{"ring": "q", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 2}], "unit": "1",
            "product": [{"left": "x", "right": "x", "result": {}}]}"#,
    )
    .unwrap();
    let (out, text) = report(dir.path(), "h.json", &["hochschild", "--dga", dga.to_str().unwrap(), "--cap", "4"]);
    assert!(out.status.success());
    let v = json(&text);
    let rows = v["result"]["cohomological"]["table"]["rows"].as_array().unwrap();
    let bettis: Vec<u64> = rows.iter().filter(|r| r["degree"].as_i64().unwrap() <= 3).map(|r| r["betti"].as_u64().unwrap()).collect();
    assert_eq!(bettis, vec![1, 1, 1, 1]);
}

#[test]
fn unstabilized_windows_fail_unless_allowed() {
    let dga = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        dga.path(),
        r#"{"ring": "q", "grading": "homological", "basis": [{"name": "1", "degree": 0}, {"name": "x", "degree": 1}, {"name": "y", "degree": -2}], "unit": "1"}"#,
    )
    .unwrap();
    let p = dga.path().to_str().unwrap();
    assert_eq!(loophh(&["hochschild", "--dga", p, "--cap", "2"], &[]).status.code(), Some(1));
    assert!(loophh(&["hochschild", "--dga", p, "--cap", "2", "--allow-unstabilized"], &[]).status.success());
}

#[test]
fn malformed_input_is_located() {
    let f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    std::fs::write(f.path(), "{\"dims\": {\"0\": [\"a\"]},\n \"faces\": [").unwrap();
    let out = loophh(&["homology", "--space", f.path().to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn ceiling_is_enforced() {
    let out = loophh(&["compare", "--space", "sphere:2", "--object-cap", "2", "--nerve-cap", "1"], &[("LOOPHH_CEILING", "5")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("resource"));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 5] = [
        &["homology", "--space", "sphere:2", "--ring", "f3", "--cochains"],
        &["hochschild", "--space", "sphere:2", "--ring", "f2", "--cap", "3"],
        &["operad-verify", "--arity", "3", "--degree", "3"],
        &["hc-verify", "--object-cap", "1", "--nerve-cap", "2"],
        &["compare", "--space", "sphere:1", "--ring", "q", "--object-cap", "1", "--nerve-cap", "1", "--loop-cap", "2", "--hochschild-cap", "3"],
    ];
    for (k, args) in commands.iter().enumerate() {
        let (a, first) = report(dir.path(), &format!("{k}a.json"), args);
        let (b, second) = report(dir.path(), &format!("{k}b.json"), args);
        assert!(!first.is_empty(), "{args:?}");
        assert_eq!(first, second, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
