use std::fs;
use std::path::Path;
use std::process::Command;

fn run(dir: &Path, config: &str, extra: &[&str]) -> std::process::Output {
    let cfg = dir.join("config.json");
    fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_gravelast"))
        .arg("--config")
        .arg(&cfg)
        .arg("--output")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

const SETH: &str = r#"{"family": "seth", "lambda": 1.0, "mu": 1.0, "k": 1.0}"#;

#[test]
fn ball_run_writes_profile_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "ball", "materials": [{SETH}],
                 "observables": {{"rho_c": 2.0}}, "output": {{"prefix": "ball"}}}}"#
        ),
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let profile = fs::read_to_string(dir.path().join("out/ball_profile.csv")).unwrap();
    assert!(profile.starts_with("r,delta,eta,m,rho,p_rad,p_tan\n"));
    let summary = fs::read_to_string(dir.path().join("out/ball_summary.json")).unwrap();
    assert!(summary.contains("\"strict\": true"));
}

#[test]
fn ball_without_central_pressure_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "ball", "materials": [{SETH}], "observables": {{"rho_c": 1.0}}}}"#
        ),
        &[],
    );
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("rho_c > K"), "{msg}");
}

#[test]
fn invalid_material_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        r#"{"command": "ball",
            "materials": [{"family": "signorini", "lambda": -2.0, "mu": 1.0}],
            "observables": {"rho_c": 2.0}}"#,
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_config_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), r#"{"command": "unknown"}"#, &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn inadmissible_shell_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "shell", "materials": [{SETH}],
                 "observables": {{"s": 1.0, "r0": 0.5}}}}"#
        ),
        &[],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_is_deterministic_across_jobs() {
    let dir1 = tempfile::tempdir().unwrap();
    let dir2 = tempfile::tempdir().unwrap();
    let config = format!(
        r#"{{"command": "ball", "materials": [{SETH}],
             "observables": {{"rho_c": [1.5, 2.0, 4.0]}}, "output": {{"prefix": "sw"}}}}"#
    );
    let a = run(dir1.path(), &config, &["--jobs", "3"]);
    let b = run(dir2.path(), &config, &["--jobs", "1"]);
    assert!(a.status.success() && b.status.success());
    for name in ["sw_0_profile.csv", "sw_1_profile.csv", "sw_2_profile.csv", "sw_summary.json"] {
        let x = fs::read(dir1.path().join("out").join(name)).unwrap();
        let y = fs::read(dir2.path().join("out").join(name)).unwrap();
        assert_eq!(x, y, "{name} differs between job counts");
    }
}

#[test]
fn verify_multibody_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "verify", "materials": [{SETH}],
                 "observables": {{"rho_c": 2.0, "shells": [{{"s": 1.05}}]}},
                 "output": {{"prefix": "mb"}}}}"#
        ),
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let summary = fs::read_to_string(dir.path().join("out/mb_summary.json")).unwrap();
    assert!(summary.contains("\"pass\": true"));
}

#[test]
fn validate_material_reports_all_families() {
    let dir = tempfile::tempdir().unwrap();
    let materials: Vec<String> = ["seth", "svk", "signorini", "hadamard", "linear"]
        .iter()
        .map(|f| format!(r#"{{"family": "{f}", "lambda": 1.0, "mu": 1.0}}"#))
        .collect();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "validate-material", "materials": [{}],
                 "output": {{"prefix": "val"}}}}"#,
            materials.join(",")
        ),
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let summary = fs::read_to_string(dir.path().join("out/val_summary.json")).unwrap();
    for family in ["seth", "svk", "signorini", "hadamard", "linear"] {
        assert!(summary.contains(&format!("\"family\": \"{family}\"")));
    }
}

#[test]
fn calibrate_central_recovers_k() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "calibrate", "materials": [{SETH}],
                 "observables": {{"rho_c": 2.0, "p_c": 1.4685026299204988}},
                 "output": {{"prefix": "cal"}}}}"#
        ),
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let summary = fs::read_to_string(dir.path().join("out/cal_summary.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&summary).unwrap();
    let k = doc["results"][0]["k"].as_f64().unwrap();
    assert!((k - 1.0).abs() < 1e-10, "k = {k}");
}

#[test]
fn selfsimilar_and_phase_emit_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "selfsimilar", "materials": [{SETH}],
                 "observables": {{"radii": {{"min": 0.1, "max": 10.0, "n": 5}}}},
                 "output": {{"prefix": "ss"}}}}"#
        ),
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let table = fs::read_to_string(dir.path().join("out/ss_selfsimilar.csv")).unwrap();
    assert_eq!(table.lines().count(), 6);

    let out = run(
        dir.path(),
        &format!(
            r#"{{"command": "phase", "materials": [{SETH}],
                 "observables": {{"orbits": [[0.5, 0.9, 1.0]], "xi_end": 10.0, "samples": 11}},
                 "output": {{"prefix": "ph"}}}}"#
        ),
        &[],
    );
    assert!(out.status.success(), "{out:?}");
    let orbit = fs::read_to_string(dir.path().join("out/ph_orbit0.csv")).unwrap();
    assert!(orbit.starts_with("xi,u,y,z\n"));
    assert_eq!(orbit.lines().count(), 12);
}
