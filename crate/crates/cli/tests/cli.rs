use std::process::{Command, Output};

fn gaslie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaslie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn algebra_text_lists_all_brackets() {
    let o = gaslie(&["verify-algebra", "--format", "text"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with('[')).count(), 66);
    assert!(out.contains("[X1, X11] = X1"), "{out}");
}

#[test]
fn mutated_constant_fails_with_location() {
    let o = gaslie(&["verify-algebra", "--mutate", "1,2,3"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("(1,2,3)"), "{err}");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["algebra"]["passed"], false);
    assert!(!v["algebra"]["jacobi_violations"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_id_is_a_usage_error() {
    let o = gaslie(&["verify-invariants", "--entries", "4.2,9.99"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("9.99"));
    assert_eq!(code(&gaslie(&["classify", "nope"])), 2);
}

#[test]
fn bad_inputs_are_usage_errors() {
    let cases: &[&[&str]] = &[
        &["trace", "--kind", "isochoric-reduced", "--start", "0,0,1", "--t0", "2", "--t1", "1"],
        &["trace", "--kind", "isochoric-general", "--start", "0,0,1"],
        &["trace", "--kind", "isochoric-reduced", "--start", "0,1"],
        &["verify-solution", "steady"],
        &["verify-invariants", "4.77", "--tol-zero", "-1"],
        &["verify-invariants", "4.3", "--params", "zz=1"],
        &["verify-invariants", "4.23.i", "--params", "a=0,b=1"],
        &["frobnicate"],
    ];
    for c in cases {
        assert_eq!(code(&gaslie(c)), 2, "{c:?}");
    }
}

#[test]
fn single_instance_with_params() {
    let o = gaslie(&["verify-invariants", "4.3", "--params", "a=1/2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let e = &v["catalog"]["entries"][0];
    assert_eq!(e["id"], "4.3");
    assert_eq!(e["samples"].as_array().unwrap().len(), 1);
    assert_eq!(e["samples"][0]["rank"], 5);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["classify", "--entries", "4.2,4.23.i,4.42", "--jobs", "3"];
    let a = gaslie(&args);
    let b = gaslie(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = gaslie(&["classify", "--entries", "4.2,4.23.i,4.42", "--jobs", "1"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn heisenberg_row_reports_the_extra_bracket() {
    let o = gaslie(&["classify", "4.21", "--format", "text"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("[e2, e4] has e1 coefficient 1 (listed 0)"), "{}", stdout(&o));
}

#[test]
fn trace_writes_csv() {
    let dir = std::env::temp_dir().join(format!("gaslie-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("path.csv");
    let json = dir.join("trace.json");
    let o = gaslie(&[
        "trace",
        "--kind",
        "nonisochoric-reduced",
        "--start",
        "-2,1,1",
        "--u0",
        "1",
        "--t0",
        "0.1",
        "--t1",
        "1",
        "--h",
        "0.01",
        "--csv",
        csv.to_str().unwrap(),
        "--out",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,z"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1.0000000000000001e-1");
    assert_eq!(text.lines().count(), 1 + 91);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(v["traces"][0]["error"]["max_component"].as_f64().unwrap() < 1e-6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn solutions_pass() {
    let o = gaslie(&["verify-solution", "all"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["solutions"].as_array().unwrap().len(), 4);
    assert!(v["catalog"].is_null());
}
