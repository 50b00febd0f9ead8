//! End-to-end tests of the binary: exit codes, output shapes, and the
//! enumeration guard.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_split-spectral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_split-spectral"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn report_emits_geometry_and_ledger() {
    let out = run(&["report", "--m", "2", "--g", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["geometry"]["g_S"], 17);
    assert_eq!(v["geometry"]["g_Sbar"], 7);
    assert_eq!(v["geometry"]["N"], 8);
    assert_eq!(v["hitchin_base_dims"], serde_json::json!([3, 7]));
    let ledger = v["ledger"].as_array().unwrap();
    assert!(ledger.iter().any(|e| e["id"] == "deg_u"));
    assert!(ledger
        .iter()
        .any(|e| e["id"] == "residual_index_convention" && e["resolved"] == false));
}

#[test]
fn check_passes_and_is_exit_zero() {
    for (m, g) in [("1", "2"), ("2", "2"), ("3", "2"), ("2", "3")] {
        let out = run(&["check", "--m", m, "--g", g]);
        assert!(out.status.success(), "check failed for m={m} g={g}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["all_passed"], true);
    }
}

#[test]
fn fiber_count_known_value() {
    let out = run(&[
        "fiber-count", "--group", "so", "--m", "2", "--g", "2", "--M", "2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["fiber_count_per_point"], "28");

    let out = run(&[
        "fiber-count", "--group", "sp", "--m", "2", "--g", "2", "--M", "2",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 28 * 2^14
    assert_eq!(v["fiber_count_per_point"], "458752");
}

#[test]
fn sw_trivial_datum() {
    let out = run(&[
        "sw", "--m", "2", "--g", "2", "--F", "0x0:14", "--D", "00000000", "--w2v", "1",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["w1_Vplus"]["hex"], "0x0");
    assert_eq!(v["w2_Vplus"], false);
    assert_eq!(v["w2_Vminus"], true);
}

#[test]
fn degrees_profile_and_ledger() {
    let out = run(&["degrees", "--m", "2", "--g", "2", "--M", "0"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["profile"]["deg_U_plus"], 6);
    assert_eq!(v["profile"]["deg_U_minus"], 2);
    assert_eq!(v["profile"]["deg_W"], 2);
    assert_eq!(v["milnor_wood"]["within_bound"], true);
    assert!(v["ledger"].as_array().unwrap().len() >= 3);
}

#[test]
fn hitchin_bundles() {
    let out = run(&["hitchin", "--m", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v["symplectic"]["half_exponents"],
        serde_json::json!([-3, -1, 1, 3])
    );
    assert_eq!(v["checks"]["det_trivial"], true);
}

#[test]
fn grade_tables() {
    let out = run(&["grade", "--group", "so", "--m", "2", "--g", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["table"]["total"], "64"); // 2^(N-2)
    assert_eq!(v["table"]["rows"].as_array().unwrap().len(), 3); // M = 0, 2, 4
}

#[test]
fn enumerate_respects_the_guard() {
    let out = run(&["enumerate", "--m", "1", "--g", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count"], 4);

    // N = 24 over the default guard of 20
    let out = run(&["enumerate", "--m", "3", "--g", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("SPLIT_SPECTRAL_MAX_ENUM"));

    // raising the guard admits it
    let out = run_env(
        &["enumerate", "--m", "3", "--g", "3", "--M", "2"],
        "SPLIT_SPECTRAL_MAX_ENUM",
        "24",
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // 1 + C(24,2) = 277 classes with M <= 2
    assert_eq!(v["count"], 277);
    assert_eq!(v["expected_total"], "277");
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["report", "--m", "0", "--g", "2"][..],
        &["report", "--m", "2", "--g", "1"][..],
        &["degrees", "--m", "2", "--g", "2", "--M", "3"][..],
        &["degrees", "--m", "2", "--g", "2", "--M", "10"][..],
        &["sw", "--m", "2", "--g", "2", "--F", "0x0:3", "--D", "00000000", "--w2v", "0"][..],
        &["sw", "--m", "2", "--g", "2", "--F", "0x0:14", "--D", "010", "--w2v", "0"][..],
        &["sw", "--m", "2", "--g", "2", "--F", "zz:14", "--D", "00000000", "--w2v", "0"][..],
        &["fiber-count", "--group", "so", "--m", "2", "--g", "2", "--M", "7"][..],
        &["no-such-command"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "args: {args:?}");
    }
}

#[test]
fn table_format_is_plain_text() {
    let out = run(&["report", "--m", "2", "--g", "2", "--format", "table"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("g_S"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}

#[test]
fn help_and_version_exit_zero() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}
