use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_uplab");

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(BIN).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run(args);
    (
        code,
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")),
    )
}

#[test]
fn prop2_output_is_exact() {
    let (code, out) = run(&["prop2", "--n", "6", "--g", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim_end(),
        r#"{"d":2,"h":0,"case":"GenericIrreducible","requires_upp":true}"#
    );
    let (code, v) = run_json(&["prop2", "--n", "6", "--g", "4"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "InconsistentInput");
}

#[test]
fn hilbert_of_one_point() {
    let (code, out) = run(&["hilbert", "--points", &data("one_point.json")]);
    assert_eq!(code, 0);
    assert_eq!(
        out.trim_end(),
        r#"{"H":[1],"delta":[1],"a1":1,"a2":1,"t":0,"decreasing_type":true}"#
    );
}

#[test]
fn rathmann_q4_verifies() {
    let (code, v) = run_json(&["rathmann", "--p", "2", "--f", "2", "--verify", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["points"], 16);
    assert_eq!(v["minimal_degree"], 4);
    assert_eq!(v["upp"], "fails");
    assert_eq!(v["decreasing_type"], true);
    assert_eq!(v["all_pass"], true);
}

#[test]
fn subcommand_reports() {
    let control = data("collinear_control.json");
    let (code, v) = run_json(&["upp", "--points", &control, "--exhaustive"]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("fails")));
    let (_, v) = run_json(&[
        "upp",
        "--points",
        &data("one_point.json"),
        "--samples",
        "4",
        "--seed",
        "2",
    ]);
    assert_eq!(v["verdict"], "holds_on_sample");

    let (_, v) = run_json(&["minsys", "--points", &control]);
    assert_eq!(
        (v["minimal_degree"].as_u64(), v["dimension"].as_u64()),
        (Some(2), Some(2))
    );
    let (_, v) = run_json(&["minsys", "--points", &control, "--degree", "3"]);
    assert_eq!(v["dimension"], 5);

    let (_, v) = run_json(&["gcd", "--points", &control, "--degree", "3"]);
    assert_eq!(v["gcd_degree"], 1);
    assert_eq!(v["gcd"]["coeffs"], serde_json::json!({"0,0,1": [1]}));

    let (_, v) = run_json(&["irreducible", "--form", &data("cusp_f7.json"), "--max-conj", "3"]);
    assert_eq!(v["verdict"], "true");
    let (_, v) = run_json(&["irreducible", "--form", &data("line_pair_f5.json"), "--max-conj", "2"]);
    assert_eq!(v["verdict"], "false");

    let (_, v) = run_json(&[
        "section",
        "--curve",
        &data("twisted_cubic_f101.json"),
        "--plane",
        &data("plane_f101.json"),
        "--max-ext",
        "3",
    ]);
    assert_eq!(v["complete"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 3);
}

#[test]
fn trial_subcommands_pass() {
    let (code, v) = run_json(&[
        "verify-theorem3",
        "--curve",
        &data("twisted_cubic_f101.json"),
        "--trials",
        "5",
        "--members",
        "10",
        "--seed",
        "3",
        "--max-ext",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["trials_completed"], 5);
    let (code, v) = run_json(&[
        "verify-decreasing-type",
        "--curve",
        &data("rathmann_q2.json"),
        "--trials",
        "5",
        "--seed",
        "3",
        "--max-ext",
        "4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["all_decreasing"], true);
}

#[test]
fn failed_assertion_exits_one() {
    // no member can reach a threshold above 1
    let (code, v) = run_json(&[
        "verify-theorem3",
        "--curve",
        &data("twisted_cubic_f101.json"),
        "--trials",
        "2",
        "--members",
        "5",
        "--seed",
        "3",
        "--max-ext",
        "3",
        "--threshold",
        "1.5",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["all_pass"], false);
}

#[test]
fn errors_are_json_with_exit_two() {
    for args in [
        vec!["hilbert", "--points", "/nonexistent.json"],
        vec!["upp", "--points", "/nonexistent.json"],
        vec!["frobnicate"],
        vec!["rathmann", "--p", "4", "--f", "1", "--seed", "1"],
        vec!["upp", "--points", "data/one_point.json", "--samples", "3"],
    ] {
        let (code, v) = run_json(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(v["error"].is_string() && v["detail"].is_string(), "{args:?}");
    }
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "{\"field\": 3}").unwrap();
    let (code, v) = run_json(&["hilbert", "--points", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "InvalidInput");
}

#[test]
fn output_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, stdout) = run(&["--output", path.to_str().unwrap(), "prop2", "--n", "10", "--g", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.trim().is_empty());
    let (_, direct) = run(&["prop2", "--n", "10", "--g", "3"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap().trim_end(), direct.trim_end());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["rathmann", "--p", "2", "--f", "1", "--verify", "--seed", "5"];
    assert_eq!(run(&args), run(&args));
}

#[test]
fn wrong_input_kind_is_rejected() {
    let (code, v) = run_json(&[
        "upp",
        "--points",
        &data("rathmann_q4.json"),
        "--samples",
        "20",
        "--seed",
        "9",
    ]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "InvalidInput");
}

fn schema_for(name: &str) -> jsonschema::Validator {
    let path = format!("{}/../../docs/schema.json", env!("CARGO_MANIFEST_DIR"));
    let mut schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    schema["$ref"] = Value::String(format!("#/$defs/{name}"));
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = schema_for(name);
    let errors: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

#[test]
fn reports_and_inputs_match_the_published_schema() {
    let control = data("collinear_control.json");
    let cubic = data("twisted_cubic_f101.json");
    let cusp = data("cusp_f7.json");
    let plane = data("plane_f101.json");
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("profile", vec!["hilbert", "--points", &control]),
        ("upp", vec!["upp", "--points", &control, "--exhaustive"]),
        (
            "upp",
            vec!["upp", "--points", &control, "--samples", "5", "--seed", "1"],
        ),
        ("minsys", vec!["minsys", "--points", &control]),
        ("irreducible", vec!["irreducible", "--form", &cusp, "--max-conj", "3"]),
        ("gcd", vec!["gcd", "--points", &control, "--degree", "3"]),
        (
            "section",
            vec!["section", "--curve", &cubic, "--plane", &plane, "--max-ext", "3"],
        ),
        (
            "rathmann",
            vec!["rathmann", "--p", "2", "--f", "1", "--verify", "--seed", "1"],
        ),
        (
            "trial_report",
            vec![
                "verify-theorem3",
                "--curve",
                &cubic,
                "--trials",
                "2",
                "--members",
                "4",
                "--seed",
                "1",
                "--max-ext",
                "3",
            ],
        ),
        (
            "decreasing_type_report",
            vec![
                "verify-decreasing-type",
                "--curve",
                &cubic,
                "--trials",
                "2",
                "--seed",
                "1",
                "--max-ext",
                "3",
            ],
        ),
        ("prop2", vec!["prop2", "--n", "6", "--g", "3"]),
        ("error", vec!["prop2", "--n", "0", "--g", "3"]),
    ];
    for (name, args) in cases {
        let (_, doc) = run_json(&args);
        assert_valid(name, &doc);
    }

    for (name, files) in [
        ("points", vec!["collinear_control.json", "one_point.json"]),
        (
            "curve",
            vec!["twisted_cubic_f101.json", "rathmann_q2.json", "rathmann_q4.json"],
        ),
        ("plane", vec!["plane_f101.json"]),
        ("form", vec!["cusp_f7.json", "line_pair_f5.json"]),
    ] {
        for f in files {
            let doc: Value = serde_json::from_str(&std::fs::read_to_string(data(f)).unwrap()).unwrap();
            assert_valid(name, &doc);
        }
    }

    // report fragments read back as inputs; the control conics are x*z and y*z
    let (_, minsys) = run_json(&["minsys", "--points", &control]);
    let form = serde_json::to_string(&minsys["basis"][0]).unwrap();
    let tmp = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(tmp.path(), form).unwrap();
    let (code, v) = run_json(&["irreducible", "--form", tmp.path().to_str().unwrap(), "--max-conj", "2"]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("false")));
    let (_, sec) = run_json(&[
        "section",
        "--curve",
        &cubic,
        "--plane",
        &data("plane_f101.json"),
        "--max-ext",
        "3",
    ]);
    std::fs::write(tmp.path(), serde_json::to_string(&sec["plane_points"]).unwrap()).unwrap();
    let (code, v) = run_json(&["hilbert", "--points", tmp.path().to_str().unwrap()]);
    assert_eq!((code, v["H"].clone()), (0, serde_json::json!([1, 3])));
}
