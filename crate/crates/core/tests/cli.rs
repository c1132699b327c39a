use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn qlmass(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qlmass"))
        .args(args)
        .env_remove("QLMASS_SAMPLES")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(bytes) = stdin {
        pipe.write_all(bytes).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generated_data_always_validates() {
    for args in [
        &["gen", "round", "--radius", "2", "--H", "0.5"][..],
        &["gen", "schwarzschild", "--mass", "1", "--r", "2"],
        &["gen", "ellipsoid", "--a", "1", "--c", "2", "-n", "512"],
        &[
            "gen",
            "perturbed",
            "--radius",
            "1",
            "--H",
            "2",
            "--amp",
            "0.05",
            "--mode",
            "3",
        ],
    ] {
        let data = qlmass(args, None);
        assert!(data.status.success(), "{args:?}");
        let check = qlmass(&["validate"], Some(&data.stdout));
        assert_eq!(
            check.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&check.stderr)
        );
    }
}

#[test]
fn output_is_deterministic() {
    let a = qlmass(
        &["gen", "ellipsoid", "--a", "1", "--c", "1.5", "-n", "256"],
        None,
    );
    let b = qlmass(
        &["gen", "ellipsoid", "--a", "1", "--c", "1.5", "-n", "256"],
        None,
    );
    assert_eq!(a.stdout, b.stdout);
    let x = qlmass(&["lambda0", "-"], Some(&a.stdout));
    let y = qlmass(&["lambda0", "-"], Some(&a.stdout));
    assert!(x.status.success());
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn schwarzschild_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("schw_m1_r2.json");
    let path = path.to_str().unwrap();
    assert!(qlmass(
        &[
            "gen",
            "schwarzschild",
            "--mass",
            "1",
            "--r",
            "2",
            "-o",
            path
        ],
        None
    )
    .status
    .success());

    let v = json(&qlmass(&["lambda0", path], None));
    assert!((v["exact"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-10);
    assert!(v["lower"].as_f64().unwrap() <= v["exact"].as_f64().unwrap());

    let v = json(&qlmass(
        &["star", "--left", "hawking", "--right", "brown-york", path],
        None,
    ));
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((v["left_lambda"].as_f64().unwrap() - 5.0 / 3.0).abs() < 1e-8);

    let v = json(&qlmass(&["mass", "--functional", "brown-york", path], None));
    assert!((v["value"].as_f64().unwrap() - 1.25).abs() < 1e-6);

    let csv = qlmass(
        &["mass", "--functional", "hawking", "--format", "csv", path],
        None,
    );
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("functional,method,value\nhawking,quadrature,"));
}

#[test]
fn unit_sphere_critical_mass_is_zero() {
    let data = qlmass(&["gen", "round", "--radius", "1", "--H", "2"], None);
    let v = json(&qlmass(
        &["mass", "--functional", "critical"],
        Some(&data.stdout),
    ));
    assert!(v["value"].as_f64().unwrap().abs() < 1e-10);
}

#[test]
fn sample_count_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qlmass"))
        .args(["gen", "round", "--radius", "1", "--H", "2"])
        .env("QLMASS_SAMPLES", "40")
        .output()
        .unwrap();
    assert_eq!(json(&out)["t"].as_array().unwrap().len(), 40);
    let bad = Command::new(env!("CARGO_BIN_EXE_qlmass"))
        .args(["gen", "round", "--radius", "1", "--H", "2"])
        .env("QLMASS_SAMPLES", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(qlmass(&["nonsense"], None).status.code(), Some(2));
    assert_eq!(
        qlmass(&["validate"], Some(b"not json")).status.code(),
        Some(1)
    );
    assert_eq!(
        qlmass(&["curve", "--mass", "1", "--r", "0.2"], None)
            .status
            .code(),
        Some(2)
    );
    let help = qlmass(&["--help"], None);
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn curve_samples_the_inner_mass() {
    let out = qlmass(&["curve", "--mass", "1", "--r", "2", "--steps", "10"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
    // 17 significant digits on every number.
    let first = text.lines().nth(1).unwrap().split(',').next().unwrap();
    let digits: String = first.chars().filter(|c| c.is_ascii_digit()).collect();
    assert_eq!(digits.trim_start_matches('0').len(), 17, "{first}");
}

#[test]
fn validate_writes_the_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("curve.csv");
    let data = qlmass(
        &["gen", "ellipsoid", "--a", "1", "--c", "2", "-n", "128"],
        None,
    );
    let out = qlmass(
        &["validate", "-", "--embedding-csv", csv.to_str().unwrap()],
        Some(&data.stdout),
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("t,rho,z,H0\n"));
    assert_eq!(text.lines().count(), 129);
}
