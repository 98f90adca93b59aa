use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn sympindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sympindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn index_doc(doc: &str, extra: &[&str]) -> Output {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(doc.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap().to_string();
    let mut args = extra.to_vec();
    args.extend(["index", path.as_str()]);
    sympindex(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("machine output is JSON")
}

#[test]
fn oscillator_generator_gives_gutzwiller_five() {
    let out = index_doc(
        r#"{"version": 1, "generator": {"name": "two_oscillator", "params": [1.0, 1.4142135623730951, 1]}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nu"], -5);
    assert_eq!(v["gutzwiller_mu"], 5);
    assert_eq!(v["cz_oracle"]["status"], "n/a");
    assert_eq!(v["cz_oracle"]["reason"], "degenerate_endpoint");
}

#[test]
fn alpha_squared_has_nu_four() {
    let out = index_doc(r#"{"version": 1, "generator": {"name": "alpha_power", "params": [2]}}"#, &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["nu"], 4);
}

#[test]
fn integrated_libration_matches_closed_form_path() {
    let out = index_doc(
        r#"{"version": 1, "hamiltonian": {"spec": {"two_oscillator": {"wx": 1.0, "wy": 1.4142135623730951}},
            "orbit": "x_libration", "reps": 2}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["gutzwiller_mu"], 9);
}

#[test]
fn quartic_circular_orbit_reports_half_integer() {
    let out = index_doc(
        r#"{"version": 1, "hamiltonian": {"spec": "quartic_central", "orbit": {"circular": {"radius": 1.0}}}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["nu"], -5.5);
    assert_eq!(v["gutzwiller_mu"], 5.5);
}

#[test]
fn nondegenerate_endpoint_passes_every_cross_check() {
    for profile in ["default", "strict"] {
        let out = index_doc(
            r#"{"version": 1, "generator": {"name": "rotation", "params": [7.5]}}"#,
            &["--tolerance-profile", profile],
        );
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["classification"], "Sp+");
        assert_eq!(v["nu"], -3);
        assert_eq!(v["cz_oracle"], -3);
        assert_eq!(v["concavity"], 1);
        let checks = v["cross_checks"].as_array().unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c["status"] == "pass"), "{checks:?}");
    }
}

#[test]
fn explicit_samples_are_accepted() {
    let t = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mats: Vec<Value> = t
        .iter()
        .map(|&s: &f64| {
            let a = 1.2 * s;
            serde_json::json!([[a.cos(), a.sin()], [-a.sin(), a.cos()]])
        })
        .collect();
    let doc = serde_json::json!({"version": 1, "samples": {"times": t, "matrices": mats}});
    let out = index_doc(&doc.to_string(), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["nu"], -1);
}

#[test]
fn invalid_documents_exit_with_two() {
    let docs = [
        r#"{"version": 1, "samples": {"times": [0, 1], "matrices": [[[1, 0], [0, 1]], [[2, 0], [0, 2]]]}}"#,
        r#"{"version": 2, "generator": {"name": "alpha_power", "params": [1]}}"#,
        r#"{"version": 1}"#,
        r#"{"version": 1, "generator": {"name": "nonexistent"}}"#,
        r#"{"version": 1, "generator": {"name": "alpha_power", "params": [1]}, "extra": 0}"#,
        r#"not json"#,
        r#"{"version": 1, "samples": {"times": [0, 0.5, 1], "matrices": [[[1, 0], [0, 1]], [[0, 1], [-1, 0]], [[-1, 0], [0, -1]]]}}"#,
    ];
    for doc in docs {
        let out = index_doc(doc, &[]);
        assert_eq!(out.status.code(), Some(2), "{doc}");
    }
}

#[test]
fn coarse_samples_report_nu_unavailable() {
    let doc = r#"{"version": 1, "samples": {"times": [0, 0.25, 0.5, 0.75, 1], "matrices": [[[1, 0], [0, 1]],
        [[0.7071067811865476, 0.7071067811865476], [-0.7071067811865476, 0.7071067811865476]], [[0, 1], [-1, 0]],
        [[-0.7071067811865476, 0.7071067811865476], [-0.7071067811865476, -0.7071067811865476]], [[-1, 0], [0, -1]]]}}"#;
    let out = index_doc(doc, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["nu"]["reason"], "under_resolved");
}

#[test]
fn output_is_deterministic() {
    let doc = r#"{"version": 1, "generator": {"name": "rotation", "params": [4.0]}}"#;
    for format in ["machine", "human"] {
        let a = index_doc(doc, &["--format", format]);
        let b = index_doc(doc, &["--format", format]);
        assert_eq!(a.stdout, b.stdout);
    }
    let a = sympindex(&["verify", "nu", "--seed", "3", "--count", "4"]);
    let b = sympindex(&["verify", "nu", "--seed", "3", "--count", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_reports_each_check() {
    let out = sympindex(&["verify", "cayley", "--count", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["suite"], "cayley");
    assert_eq!(v[0]["status"], "pass");
    assert!(v[0]["checks"].as_array().unwrap().len() >= 4);
    let human = sympindex(&["--format", "human", "verify", "tau", "--count", "3"]);
    assert!(String::from_utf8_lossy(&human.stdout).starts_with("suite tau seed=0 count=3: PASS"));
}

#[test]
fn unknown_suite_is_an_input_error() {
    let out = sympindex(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn oscillator_table_matches_closed_form() {
    let out = sympindex(&["oscillator-table", "--wx", "1", "--wy", "1.4142135623730951", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let mus: Vec<i64> = v["rows"].as_array().unwrap().iter().map(|r| r["mu"].as_i64().unwrap()).collect();
    assert_eq!(mus, [5, 9, 15]);
}

#[test]
fn resonant_table_uses_the_degenerate_branch() {
    let out = sympindex(&["oscillator-table", "--wx", "1", "--wy", "1", "--reps", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    for (i, row) in v["rows"].as_array().unwrap().iter().enumerate() {
        assert_eq!(row["mu"], 4 * (i as i64 + 1));
        assert_eq!(row["branch"], "resonant");
    }
}

#[test]
fn nonpositive_frequency_is_rejected() {
    let out = sympindex(&["oscillator-table", "--wx", "0", "--wy", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
