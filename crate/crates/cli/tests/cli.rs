use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qshape(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qshape")).args(args).env_remove("QSHAPE_SEED").output().unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = qshape(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

const LINEAR_A2: &str = r#"{"field":{"char":0},"quiver":{"vertices":["1","2"],
  "arrows":[{"name":"a","from":"1","to":"2","degree":0}],"relations":[],"nilpotency_bound":2}}"#;

#[test]
fn check_truncated_polynomial() {
    let (code, v) = run(&["check", "--builtin", "truncated_polynomial", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["hypotheses"]["ell"], 3);
    assert_eq!(v["hypotheses"]["self_injective"], true);
    assert_eq!(v["hypotheses"]["violation"], Value::Null);
}

#[test]
fn check_exterior() {
    let (code, v) = run(&["check", "--builtin", "exterior", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["hypotheses"]["ell"], 3);
}

#[test]
fn check_rejects_linear_a2() {
    let f = file(LINEAR_A2);
    let (code, v) = run(&["check", path(&f)]);
    assert_eq!(code, 3);
    assert_eq!(v["hypotheses"]["violation"], "self_injective");
    let (code, v) = run(&["gamma", path(&f)]);
    assert_eq!(code, 3);
    assert_eq!(v["result"], Value::Null);
}

#[test]
fn gamma_auto_comparisons() {
    for (family, n, reference, dim) in
        [("truncated_polynomial", "5", "upper_triangular:4", 10), ("preprojective_A", "3", "auslander:2", 5)]
    {
        let (code, v) = run(&["gamma", "--builtin", family, n, "--compare", "auto"]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["comparison"]["reference"], reference);
        assert_eq!(v["result"]["comparison"]["verdict"]["verdict"], "match");
        assert_eq!(v["result"]["gamma"]["dim"], dim);
    }
}

#[test]
fn gamma_exterior_subcategory() {
    let (code, v) = run(&["gamma", "--builtin", "exterior", "2", "--compare", "subcategory"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["gamma"]["dim"], 4);
    assert_eq!(v["result"]["comparison"]["verdict"]["verdict"], "match");
}

#[test]
fn gamma_mismatch_exits_4() {
    let (code, v) = run(&["gamma", "--builtin", "truncated_polynomial", "5", "--compare", "upper_triangular:3"]);
    assert_eq!(code, 4);
    assert_eq!(v["result"]["comparison"]["verdict"], serde_json::json!({"verdict": "mismatch", "field": "dim"}));
}

#[test]
fn gamma_scalars_are_serialized_per_field() {
    let (_, q) = run(&["gamma", "--builtin", "truncated_polynomial", "3"]);
    assert!(q["result"]["gamma"]["unit"].as_array().unwrap().iter().all(Value::is_string));
    let (_, p) = run(&["gamma", "--builtin", "truncated_polynomial", "3", "--char", "7"]);
    assert!(p["result"]["gamma"]["unit"].as_array().unwrap().iter().all(Value::is_u64));
    assert_eq!(p["field"]["name"], "GF(7)");
}

#[test]
fn ext_vanishes_off_zero() {
    let (code, v) = run(&["ext", "--builtin", "truncated_polynomial", "3", "--range", "5"]);
    assert_eq!(code, 0);
    let table = v["result"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 11);
    for row in table {
        let expected = if row["degree"] == 0 { 3 } else { 0 };
        assert_eq!(row["dim"], expected);
    }
}

#[test]
fn window_with_serre() {
    let (code, v) = run(&["window", "--builtin", "truncated_polynomial", "2", "--lo", "-3", "--hi", "3", "--serre"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    for key in ["finite_dimensional", "locally_bounded", "local_endomorphisms", "nilpotent", "passed"] {
        assert_eq!(r[key], true, "{key}");
    }
    assert_eq!(r["serre"]["natural"], true);
    assert_eq!(r["radical_nilpotency"], 2);
}

#[test]
fn basechange_with_dual_numbers() {
    let a = file(r#"{"field":{"char":0},"builtin":{"family":"truncated_polynomial","parameter":2}}"#);
    let (code, v) = run(&["basechange", "--builtin", "truncated_polynomial", "3", "--with", path(&a)]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["gamma_tensor_dim"], 6);
    assert_eq!(v["result"]["coefficient_grading_forgotten"], true);
    assert!(v["result"]["bc1"].as_array().unwrap().iter().all(|r| r["pass"] == true));
}

#[test]
fn basechange_field_mismatch_is_a_parse_error() {
    let a = file(r#"{"field":{"char":5},"builtin":{"family":"truncated_polynomial","parameter":2}}"#);
    let (code, _) = run(&["basechange", "--builtin", "truncated_polynomial", "3", "--with", path(&a)]);
    assert_eq!(code, 2);
}

#[test]
fn verify_preprojective_a1_is_trivial() {
    let (code, v) = run(&["verify", "preprojective_A", "1"]);
    assert_eq!(code, 0);
    let gamma = &v["result"]["criteria"][1]["detail"];
    assert_eq!(gamma["tilting_dim"], 0);
    assert_eq!(gamma["gamma_dim"], 0);
}

#[test]
fn verify_passes_on_small_instances() {
    for (family, n) in [("truncated_polynomial", "3"), ("exterior", "2"), ("preprojective_A", "2")] {
        let (code, v) = run(&["verify", family, n]);
        assert_eq!(code, 0, "{family} {n}");
        assert_eq!(v["result"]["passed"], true);
        assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 6);
    }
}

#[test]
fn parse_errors_exit_2() {
    let bad = file(r#"{"field":{"char":0}"#);
    assert_eq!(run(&["check", path(&bad)]).0, 2);
    let both = file(r#"{"field":{"char":0},"builtin":{"family":"exterior","parameter":1},"quiver":{"vertices":[],"arrows":[],"nilpotency_bound":1}}"#);
    assert_eq!(run(&["check", path(&both)]).0, 2);
    let bad_char = file(r#"{"field":{"char":9},"builtin":{"family":"exterior","parameter":1}}"#);
    assert_eq!(run(&["check", path(&bad_char)]).0, 2);
    assert_eq!(run(&["verify", "nosuch", "2"]).0, 2);
    assert_eq!(run(&["gamma", "--builtin", "exterior", "2", "--compare", "sideways"]).0, 2);
    assert_eq!(qshape(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quiver_file_with_relations() {
    // k⟨x, y⟩/(xy + yx, x², y²) with both arrows in degree 1 is the exterior algebra on two generators.
    let f = file(
        r#"{"field":{"char":0},"quiver":{"vertices":["v"],
          "arrows":[{"name":"x","from":"v","to":"v","degree":1},{"name":"y","from":"v","to":"v","degree":1}],
          "relations":[[{"coeff":1,"path":["x","y"]},{"coeff":"1/1","path":["y","x"]}],
                       [{"coeff":1,"path":["x","x"]}],[{"coeff":1,"path":["y","y"]}]],
          "nilpotency_bound":3}}"#,
    );
    let (code, v) = run(&["gamma", path(&f), "--compare", "subcategory"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["gamma"]["dim"], 4);
    let (_, builtin) = run(&["gamma", "--builtin", "exterior", "2"]);
    assert_eq!(v["result"]["fingerprint"], builtin["result"]["fingerprint"]);
}

#[test]
fn output_is_byte_identical() {
    let args = ["gamma", "--builtin", "exterior", "3", "--compare", "auto", "--seed", "11"];
    let (a, b) = (qshape(&args), qshape(&args));
    assert_eq!(a.stdout, b.stdout);
    let f = file(LINEAR_A2);
    assert_eq!(qshape(&["check", path(&f)]).stdout, qshape(&["check", path(&f)]).stdout);
}

#[test]
fn seed_environment_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_qshape"))
        .args(["check", "--builtin", "exterior", "1", "--seed", "3"])
        .env("QSHAPE_SEED", "42")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 42);
    let (_, v) = run(&["check", "--builtin", "exterior", "1", "--seed", "3"]);
    assert_eq!(v["seed"], 3);
}

#[test]
fn text_format() {
    let out = qshape(&["check", "--builtin", "truncated_polynomial", "4", "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("hypotheses.ell: 3\n"));
    assert!(s.contains("status: \"pass\"\n"));
}
