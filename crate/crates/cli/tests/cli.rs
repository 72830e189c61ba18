//! End-to-end tests of the binary: the documented invocations, the exit-code
//! contract, report determinism, batch mode, file inputs, and input guards.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use oscdual_core::ParamVariety;

fn oscdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscdual"))
        .args(args)
        .env_remove("OSCDUAL_MAX_DEGREE")
        .output()
        .expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn report(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("standard output is a JSON report")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).expect("tmp dir");
    let path = dir.join(name);
    fs::write(&path, contents).expect("fixture written");
    path
}

fn coords_of(value: &Value) -> ParamVariety {
    let coords: Vec<&str> =
        value.as_array().expect("coords array").iter().map(|c| c.as_str().unwrap()).collect();
    ParamVariety::parse(&["t"], &coords).expect("coords parse")
}

const CONIC: &str = r#"{"params": ["t"], "coords": ["1 + t^2", "1 - t^2", "2*t"], "ambient_dim": 2}"#;
const PARABOLA: &str = r#"{"params": ["t"], "coords": ["1", "t", "t^2"], "ambient_dim": 2}"#;
const CONIC_PUSH: &str = r#"{"params": ["t"], "coords": ["t^4 - 1", "-t^4 - 1", "2*t^3 - 2*t", "t^3 + t"], "ambient_dim": 3}"#;

#[test]
fn certifies_the_symmetric_monomial_curve() {
    let out = oscdual(&["selfdual", "--catalog", "monomial:1,2,3", "--form", "auto"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["command"], "selfdual");
    assert_eq!(r["verdict"], "pass");
    assert_eq!(r["residuals"].as_array().unwrap().len(), 0);
    assert_eq!(r["data"]["selfdual"], true);
    assert_eq!(r["data"]["legendrian"], true);
    assert_eq!(r["data"]["in_hyperplane"], false);
    assert_eq!(r["data"]["osc2_generic_dim"], 2);
    assert_eq!(r["data"]["solution_dim"], 1);
    assert_eq!(r["inputs"]["catalog"], "monomial:1,2,3");
}

#[test]
fn reports_the_missing_form_for_an_asymmetric_curve() {
    let out = oscdual(&["legendrian", "--catalog", "monomial:1,2,4", "--form", "auto"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert_eq!(r["residuals"][0], "no nondegenerate contact form (solution dim 0)");
    assert_eq!(r["data"]["solution_dim"], 0);
}

#[test]
fn verifies_the_incidence_pullback() {
    for n in ["2", "3"] {
        let out = oscdual(&["verify-pullback", "--n", n]);
        assert_eq!(code(&out), 0, "n = {n}");
        let r = report(&out);
        assert_eq!(r["command"], "verify-pullback");
        assert_eq!(r["verdict"], "pass");
    }
}

#[test]
fn reports_are_deterministic_modulo_timings() {
    let strip = |out: &Output| -> String {
        String::from_utf8(out.stdout.clone())
            .unwrap()
            .lines()
            .filter(|line| !line.contains("timings_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let args = ["selfdual", "--catalog", "monomial:2,3,5", "--form", "auto"];
    let first = oscdual(&args);
    let second = oscdual(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(strip(&first), strip(&second));
}

#[test]
fn round_trips_a_point_through_theta_and_beta() {
    let out = oscdual(&["theta", "--x", "1,0,1", "--y", "-2,1,2"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["point"], serde_json::json!(["1", "1", "1", "-1"]));

    let out = oscdual(&["beta", "--point", "1,1,1,-1"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["x"], serde_json::json!(["1", "0", "1"]));
    assert_eq!(r["data"]["y"], serde_json::json!(["2", "-1", "-2"]));
}

#[test]
fn runs_the_conic_pipeline_from_files() {
    let conic = temp_file("conic.json", CONIC);
    let conic = conic.to_str().unwrap();

    for lemma in ["A", "B"] {
        let out = oscdual(&["genericity", "--curve", conic, "--lemma", lemma]);
        assert_eq!(code(&out), 0, "lemma {lemma}");
        assert_eq!(report(&out)["verdict"], "pass");
    }

    let out = oscdual(&["pushforward", "--curve", conic]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let expected = ParamVariety::parse(
        &["t"],
        &["t^4 - 1", "-t^4 - 1", "2*t^3 - 2*t", "t^3 + t"],
    )
    .unwrap();
    assert!(coords_of(&r["data"]["coords"]).proj_equal(&expected).unwrap());

    let push = temp_file("conic_push.json", CONIC_PUSH);
    let push = push.to_str().unwrap();

    let out = oscdual(&["legendrian", "--curve", push, "--form", "standard"]);
    assert_eq!(code(&out), 0);

    let out = oscdual(&["selfdual", "--curve", push, "--form", "standard"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["selfdual"], true);
    assert_eq!(r["data"]["osc2_generic_dim"], 2);

    let out = oscdual(&["degree", "--curve", push]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["degree"], 4);
    assert_eq!(r["data"]["root_counts"], serde_json::json!([4, 4, 4]));
}

#[test]
fn flags_the_failing_parabola_hypotheses() {
    let parabola = temp_file("parabola.json", PARABOLA);
    let out = oscdual(&["genericity", "--curve", parabola.to_str().unwrap(), "--lemma", "A"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["verdict"], "fail");
    assert!(!r["residuals"].as_array().unwrap().is_empty());
    let checks = r["data"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["passed"] == false));
    assert!(checks.iter().all(|c| c["index"].is_u64() && c["description"].is_string()));
}

#[test]
fn evaluates_the_degree_formulas() {
    let out = oscdual(&["degree", "--d", "2", "--g", "0"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["nodes"], 0);
    assert_eq!(r["data"]["dual_degree"], 2);
    assert_eq!(r["data"]["legendrian_degree"], 4);

    let out = oscdual(&["degree", "--d", "3", "--g", "1"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["nodes"], 0);
    assert_eq!(r["data"]["dual_degree"], 6);
    assert_eq!(r["data"]["legendrian_degree"], 9);
}

#[test]
fn loads_a_user_form_file() {
    let form = temp_file(
        "standard2.json",
        r#"{"n": 2, "matrix": [["0", "1", "0", "0"], ["-1", "0", "0", "0"], ["0", "0", "0", "1"], ["0", "0", "-1", "0"]]}"#,
    );
    let push = temp_file("conic_push_form.json", CONIC_PUSH);
    let out = oscdual(&[
        "legendrian",
        "--curve",
        push.to_str().unwrap(),
        "--form",
        form.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["verdict"], "pass");

    let skewed = temp_file(
        "not_antisymmetric.json",
        r#"{"n": 1, "matrix": [["0", "1"], ["1", "0"]]}"#,
    );
    let out = oscdual(&[
        "legendrian",
        "--curve",
        push.to_str().unwrap(),
        "--form",
        skewed.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    let r = report(&out);
    assert_eq!(r["verdict"], "error");
    assert!(r["residuals"][0].as_str().unwrap().contains("antisymmetric"));
}

#[test]
fn prints_catalog_entries() {
    let out = oscdual(&["catalog", "monomial:1,2,3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["dual_exponents"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(r["data"]["symmetric"], true);
    assert_eq!(r["data"]["ambient_dim"], 3);
    assert!(r["data"]["form"].is_array());

    let out = oscdual(&["catalog", "monomial:1,2,4"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["symmetric"], false);
    assert!(r["data"].get("form").is_none());

    let out = oscdual(&["catalog", "vfamily:2"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["coords"].as_array().unwrap().len(), 6);
    assert!(r["data"]["form"].is_array());

    let out = oscdual(&["catalog", "hypersurface:3:x2^3 + x3^3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["coords"].as_array().unwrap().len(), 6);
    assert_eq!(r["data"]["f"], "x2^3 + x3^3");
}

#[test]
fn dualizes_the_twisted_cubic() {
    let out = oscdual(&["dualize", "--catalog", "monomial:1,2,3"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    let expected = ParamVariety::parse(&["t"], &["-t^3", "3*t^2", "-3*t", "1"]).unwrap();
    assert!(coords_of(&r["data"]["coords"]).proj_equal(&expected).unwrap());
}

#[test]
fn rejects_malformed_inputs() {
    // Exponents out of order: the module precondition surfaces as an error
    // report, not a certified failure.
    let out = oscdual(&["selfdual", "--catalog", "monomial:3,2,1", "--form", "auto"]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["verdict"], "error");

    let out = oscdual(&["dualize", "--catalog", "nonsense:1"]);
    assert_eq!(code(&out), 2);
    assert!(report(&out)["residuals"][0].as_str().unwrap().contains("catalog address"));

    // Both curve sources at once is a usage error caught before any report.
    let conic = temp_file("conic_conflict.json", CONIC);
    let out = oscdual(&[
        "legendrian",
        "--catalog",
        "monomial:1,2,3",
        "--curve",
        conic.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());

    let out = oscdual(&["degree"]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["verdict"], "error");

    // The inverse incidence map is undefined where every output vanishes.
    let out = oscdual(&["beta", "--point", "0,0,0,1"]);
    assert_eq!(code(&out), 2);
    assert!(report(&out)["residuals"][0].as_str().unwrap().contains("undefined"));

    let bad_variety = temp_file(
        "bad_ambient.json",
        r#"{"params": ["t"], "coords": ["1", "t"], "ambient_dim": 5}"#,
    );
    let out = oscdual(&["dualize", "--curve", bad_variety.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(report(&out)["residuals"][0].as_str().unwrap().contains("ambient_dim"));
}

#[test]
fn caps_symbolic_degree_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_oscdual"))
        .args(["dualize", "--catalog", "monomial:1,2,4"])
        .env("OSCDUAL_MAX_DEGREE", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(report(&out)["residuals"][0].as_str().unwrap().contains("exceeds"));

    let out = Command::new(env!("CARGO_BIN_EXE_oscdual"))
        .args(["dualize", "--catalog", "monomial:1,2,4"])
        .env("OSCDUAL_MAX_DEGREE", "banana")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(report(&out)["residuals"][0].as_str().unwrap().contains("OSCDUAL_MAX_DEGREE"));

    // The default cap admits the same input.
    let out = oscdual(&["dualize", "--catalog", "monomial:1,2,4"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn writes_the_report_to_a_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("report_out.json");
    let out = oscdual(&[
        "verify-pullback",
        "--n",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written["verdict"], "pass");
}

#[test]
fn aggregates_a_suite() {
    let mixed = temp_file(
        "suite_mixed.json",
        r#"[
            ["selfdual", "--catalog", "monomial:1,2,3", "--form", "auto"],
            ["legendrian", "--catalog", "monomial:1,2,4", "--form", "auto"],
            ["verify-pullback", "--n", "2"]
        ]"#,
    );
    let out = oscdual(&["--suite", mixed.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["command"], "suite");
    assert_eq!(r["verdict"], "fail");
    let reports = r["data"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[0]["verdict"], "pass");
    assert_eq!(reports[1]["verdict"], "fail");
    assert_eq!(reports[2]["verdict"], "pass");
    let residuals = r["residuals"].as_array().unwrap();
    assert_eq!(residuals.len(), 1);
    assert!(residuals[0].as_str().unwrap().contains("invocation 1"));

    let passing = temp_file(
        "suite_passing.json",
        r#"[["verify-pullback", "--n", "2"], ["catalog", "monomial:1,2,3"]]"#,
    );
    let out = oscdual(&["--suite", passing.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["verdict"], "pass");

    let broken = temp_file("suite_broken.json", r#"[["frobnicate"]]"#);
    let out = oscdual(&["--suite", broken.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert_eq!(report(&out)["verdict"], "error");
}

#[test]
fn conormal_reports_the_lift() {
    let conic = temp_file("conic_lift.json", CONIC);
    let out = oscdual(&["conormal", "--curve", conic.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["data"]["param"], "t");
    assert_eq!(r["data"]["ell"].as_array().unwrap().len(), 3);
    assert_eq!(r["data"]["gamma"].as_array().unwrap().len(), 3);
}
