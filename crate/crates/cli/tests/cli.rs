//! End-to-end checks of the binary: exit codes, JSON payloads, and
//! determinism of the report modulo the timing field.

use std::process::{Command, Output};

fn tubecheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tubecheck"))
        .args(args)
        .env_remove("TUBECHECK_CONFIG")
        .output()
        .expect("binary runs")
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

#[test]
fn sphericity_verified_exit_zero() {
    let out = tubecheck(&["verify-sphericity", "--family", "St", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["residual_terms"], 0);
    assert_eq!(v["schema"], "tubecheck-report/1");
}

#[test]
fn pt_sphericity_with_rational_t() {
    let out = tubecheck(&["verify-sphericity", "--family", "Pt", "--k", "5", "--n", "7", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["verdict"], "verified");
}

#[test]
fn quadric_tube_family() {
    let out = tubecheck(&["verify-sphericity", "--family", "QuadricTube", "--k", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn domain_error_exit_two() {
    let out = tubecheck(&["j-invariant", "--t", "-3"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "error");
    assert!(v["error"].as_str().unwrap().contains("singular"));
    // Family domain violations are also usage errors.
    let out = tubecheck(&["families", "--tag", "Pt", "--k", "5", "--n", "7", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn separate_quartics_verdicts() {
    let out = tubecheck(&["separate-quartics", "--t1", "2", "--t2", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["verdict"], "non-equivalent");
    // Equal parameters cannot be separated: inconclusive, exit 1.
    let out = tubecheck(&["separate-quartics", "--t1", "2", "--t2", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verdict"], "inconclusive");
}

#[test]
fn separate_bases_m1_m2() {
    let out = tubecheck(&["separate-bases", "--family1", "M1", "--family2", "M2", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "non-equivalent");
    assert!(v["values"]["witness"].as_str().unwrap().contains("degree-3"));
}

#[test]
fn signature_reports_inertia() {
    let out = tubecheck(&["signature", "--family", "FrakP", "--n", "7", "--p", "0", "--t", "-3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["values"]["positives"], "5");
    assert_eq!(v["values"]["negatives"], "2");
}

#[test]
fn trace_and_homogeneity() {
    let out = tubecheck(&["trace", "--family", "St", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let out = tubecheck(&[
        "verify-homogeneity",
        "--family",
        "St",
        "--symbolic",
        "--point",
        "1,0,0,0,0,0,1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = tubecheck(&[
        "verify-homogeneity",
        "--family",
        "GenHyper",
        "--random",
        "3",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["values"]["points_checked"], "3");
}

#[test]
fn chi_subcommands() {
    let out = tubecheck(&["chi", "--t", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["values"]["chi"], "-24/5");
    let out = tubecheck(&["chi", "--silver"]);
    assert_eq!(json_of(&out)["values"]["chi"], "-2");
    let out = tubecheck(&["chi", "--inverse", "--tau", "-6", "--branch", "lower"]);
    let v = json_of(&out);
    assert_eq!(v["values"]["t"], "1");
    assert_eq!(v["values"]["roundtrip"], "true");
    let out = tubecheck(&["chi", "--scan", "--from", "1", "--to", "50", "--samples", "20"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn phi_scan_and_reciprocity() {
    let out = tubecheck(&["phi-scan", "--from", "-1", "--to", "1", "--samples", "100"]);
    let v = json_of(&out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["values"]["derivative_at_zero"], "512");
    let out = tubecheck(&["reciprocity", "--t", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = tubecheck(&["reciprocity", "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let out = tubecheck(&["reciprocity", "--t", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_subcommand() {
    let out = tubecheck(&["parse", "--expr", "x1^2 - x2*x3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["values"]["canonical"], "x1^2 - x2*x3");
    let out = tubecheck(&["parse", "--expr", "x1 + + x2"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert!(v["error"].as_str().unwrap().contains("position 5"));
}

#[test]
fn reports_are_deterministic_modulo_timing() {
    let first = tubecheck(&["j-invariant", "--symbolic"]);
    let second = tubecheck(&["j-invariant", "--symbolic"]);
    let mut a = json_of(&first);
    let mut b = json_of(&second);
    a.as_object_mut().unwrap().remove("elapsed_ms");
    b.as_object_mut().unwrap().remove("elapsed_ms");
    assert_eq!(a, b);
    assert_eq!(a["values"]["j"], b["values"]["j"]);
}

#[test]
fn config_file_controls_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let report_dir = dir.path().join("reports");
    let config_path = dir.path().join("tubecheck.conf");
    std::fs::write(
        &config_path,
        format!("# test config\nsamples = 50\noutput_dir = {}\n", report_dir.display()),
    )
    .unwrap();
    let out = tubecheck(&["--config", config_path.to_str().unwrap(), "chi", "--t", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(report_dir.join("chi.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(v["values"]["chi"], "-18/5");
    // Environment variable path works too.
    let out = Command::new(env!("CARGO_BIN_EXE_tubecheck"))
        .args(["chi", "--t", "4"])
        .env("TUBECHECK_CONFIG", config_path.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn families_listing_and_instantiation() {
    let out = tubecheck(&["families"]);
    assert_eq!(out.status.code(), Some(0));
    let out = tubecheck(&["families", "--tag", "St", "--symbolic"]);
    let v = json_of(&out);
    assert_eq!(
        v["values"]["defining"],
        "x4^3 + t*x4*x5*x6 + x5^3 + x6^3 + x1*x6 + x2*x5 + x3*x4"
    );
}
