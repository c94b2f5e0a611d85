use std::path::PathBuf;
use std::process::{Command, Output};

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join(sub)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagrep"))
        .args(args)
        .current_dir(dir("data"))
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str], exit: i32) {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(exit),
        "{name}: stderr {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let expected = std::fs::read_to_string(dir("golden").join(format!("{name}.txt"))).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name}");
}

fn input_error(args: &[&str]) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(2), "{args:?}");
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn homology_tables() {
    golden("homology_circle", &["homology", "builtin:circle"], 0);
    golden("homology_sphere", &["homology", "builtin:sphere"], 0);
    golden("homology_torus", &["homology", "builtin:torus"], 0);
    golden("homology_genus_3", &["homology", "builtin:genus_g:3"], 0);
    golden(
        "homology_torus_json",
        &["homology", "--json", "builtin:torus"],
        0,
    );
    golden(
        "homology_cochain_file",
        &["homology", "square_complex.json"],
        0,
    );
}

#[test]
fn torus_line_is_exact() {
    let out = run(&["homology", "builtin:torus"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "H0=1 H1=2 H2=1 chi=0\n"
    );
}

#[test]
fn classification() {
    golden("classify_sphere", &["classify", "builtin:sphere"], 0);
    golden("classify_torus", &["classify", "builtin:torus"], 0);
    golden("classify_two_points", &["classify", "two_points.json"], 1);
}

#[test]
fn floer() {
    golden(
        "floer_zero_section",
        &["floer", "zero_section.json", "zero_section.json"],
        0,
    );
    golden(
        "floer_zero_section_builtin",
        &[
            "floer",
            "builtin:sphere_zero_section",
            "builtin:sphere_zero_section",
        ],
        0,
    );
    golden(
        "floer_zero_section_json",
        &["floer", "--json", "zero_section.json", "zero_section.json"],
        0,
    );
    golden(
        "floer_torus",
        &["floer", "torus_point.json", "torus_point.json"],
        0,
    );
    golden(
        "floer_identity_block",
        &["floer", "sphere_shifted.json", "sphere_shifted.json"],
        0,
    );
}

#[test]
fn verify() {
    golden(
        "verify_torus_seed_1",
        &["verify", "torus", "--seed", "1", "--count", "100"],
        0,
    );
    golden(
        "verify_concentrated_seed_7",
        &["verify", "concentrated", "--seed", "7"],
        0,
    );
}

#[test]
fn input_errors_exit_2() {
    input_error(&["homology", "malformed.json"]);
    input_error(&["homology", "inconsistent.json"]);
    input_error(&["homology", "does_not_exist.json"]);
    input_error(&["homology", "builtin:klein"]);
    input_error(&["classify", "square_complex.json"]);
    input_error(&["floer", "zero_section.json", "torus_point.json"]);
    input_error(&["floer", "builtin:nothing", "zero_section.json"]);
    input_error(&["verify", "sphere", "--count", "0"]);
    input_error(&["verify", "klein"]);
}

#[test]
fn json_errors_are_objects() {
    let out = run(&["--json", "homology", "inconsistent.json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().contains("inconsistent"));
}
