//! End-to-end tests driving the built binary.

use std::process::{Command, Output};

fn spherocap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spherocap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = spherocap(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn width_json_values() {
    let s = stdout(&["width", "--c", "0.75"]);
    assert!(s.contains("\"width\":6.28318530718"), "{s}");
    assert!(s.contains("\"regime\":\"middle\""), "{s}");
    let s = stdout(&["width", "--c", "5"]);
    assert!(s.contains("\"width\":12.5663706144"), "{s}");
    let s = stdout(&["width", "--c", "0.3", "--format", "csv"]);
    assert!(s.starts_with("c,regime,j0,alpha,beta,width,c1,c3\n"), "{s}");
}

#[test]
fn invalid_arguments_exit_2() {
    // clap rejects the stray token
    assert_eq!(spherocap(&["width", "--c", "-1"]).status.code(), Some(2));
    // an explicitly negative value passes parsing and fails validation
    assert_eq!(
        spherocap(&["width", "--c=-1.0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        spherocap(&["profile", "--name", "torus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        spherocap(&["sweep", "--c-min", "2", "--c-max", "1", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        spherocap(&["packing", "--c", "0.5"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_csv_shape() {
    let s = stdout(&["sweep", "--c-min", "0.1", "--c-max", "4", "--n", "40"]);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "c,width,alpha,beta,c1,c3");
    let mut prev = 0.0f64;
    let mut rows = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 6, "row: {line}");
        let w: f64 = cols[1].parse().unwrap();
        assert!(w >= prev - 1e-9, "width not nondecreasing at {line}");
        prev = w;
        rows += 1;
    }
    assert_eq!(rows, 40);
}

#[test]
fn sweep_boundary_rows() {
    let s = stdout(&["sweep", "--c-min", "0.5", "--c-max", "1.0", "--n", "2"]);
    let rows: Vec<&str> = s.lines().skip(1).collect();
    // both endpoints sit on the 2 pi plateau; beta(1) = 2 pi
    assert!(rows[0].starts_with("0.500000000000,6.28318530718,"), "{}", rows[0]);
    let last = rows[1].split(',').collect::<Vec<_>>();
    assert_eq!(last[1], "6.28318530718");
    assert_eq!(last[3], "6.28318530718");
}

#[test]
fn profile_csv_round_square() {
    let s = stdout(&["profile", "--c", "1", "--samples", "64"]);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "j,rho1,rho2");
    let tau = 2.0 * std::f64::consts::PI;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        assert!(
            (cols[1] - tau).abs() < 1e-9 || (cols[2] - tau).abs() < 1e-9,
            "sample off the square: {line}"
        );
    }
    // named profile goes through the quadrature path
    let s2 = stdout(&["profile", "--name", "round", "--samples", "64"]);
    assert_eq!(s2.lines().next().unwrap(), "j,rho1,rho2");
}

#[test]
fn capacities_outputs() {
    let s = stdout(&["capacities", "--ell", "6.283185307179586", "--count", "4"]);
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows[0], "k,c_k");
    assert_eq!(rows[1], "0,0");
    assert_eq!(rows[2], "1,12.5663706144");
    assert_eq!(rows[5], "4,25.1327412287");
    let s = stdout(&["capacities", "--c", "1.5"]);
    assert!(s.contains("\"c1\":12.5663706144"), "{s}");
}

#[test]
fn weights_and_packing() {
    let s = stdout(&["weights", "--c", "1.5", "--depth", "4"]);
    assert!(s.contains("\"w0\":15.8654395893"), "{s}");
    assert!(s.contains("\"tail\":[7.93271979"), "{s}");
    let s = stdout(&["packing", "--c", "1.2"]);
    assert!(s.starts_with("{\"container\":"), "{s}");
    assert!(s.contains("\"pieces\":[{\"size\":"), "{s}");
    assert!(s.contains("\"linear\":[[1,1],[0,1]]"), "{s}");
}

#[test]
fn geodesic_csv_and_json() {
    let s = stdout(&[
        "geodesic", "--c", "0.7", "--ptheta", "0.5", "--t-max", "0.01", "--dt", "0.001",
    ]);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "t,z,theta,p_z,p_theta,H,J");
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), 7);
    let h: f64 = first[5].parse().unwrap();
    assert!((h - 1.0).abs() < 1e-12, "unit-energy completion: H = {h}");

    let s = stdout(&["geodesic", "--c", "0.3", "--alpha-orbit"]);
    assert!(s.contains("\"equator_crossings\":4"), "{s}");
    let s = stdout(&["geodesic", "--c", "1", "--first-return", "--j", "0.5"]);
    assert!(s.contains("\"first_return_angle\":3.14159265359"), "{s}");
}

#[test]
fn classify_labels() {
    let s = stdout(&["classify", "--c", "0.5"]);
    assert!(s.contains("\"classification\":\"neither\""), "{s}");
    let s = stdout(&["classify", "--c", "1.5"]);
    assert!(s.contains("\"classification\":\"weakly_convex\""), "{s}");
}

#[test]
fn alternate_formats() {
    let s = stdout(&["capacities", "--c", "2", "--format", "csv"]);
    assert!(s.starts_with("c,c1,c3\n2.00000000000,12.5663706144,"), "{s}");
    let s = stdout(&["weights", "--c", "1.3", "--depth", "3", "--format", "csv"]);
    assert!(s.starts_with("index,weight\n0,"), "{s}");
    let s = stdout(&["profile", "--c", "0.8", "--samples", "17", "--format", "json"]);
    assert!(s.starts_with("{\"equator_length\":6.28318530718,"), "{s}");
    assert!(s.contains("\"samples\":[{\"j\":-1.00000000000,"), "{s}");
    let s = stdout(&["sweep", "--c-min", "1.2", "--c-max", "2.0", "--n", "3", "--format", "json"]);
    assert!(s.starts_with("[{\"c\":1.20000000000,"), "{s}");
}

#[test]
fn numerical_failure_exits_3() {
    // a meridian orbit runs into the pole chart singularity
    let out = spherocap(&["geodesic", "--c", "1", "--ptheta", "0", "--t-max", "5"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn deterministic_output() {
    let args = ["sweep", "--c-min", "0.2", "--c-max", "3.0", "--n", "25"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("spherocap-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("width.json");
    let out = spherocap(&["width", "--c", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("\"regime\":\"prolate\""));
    std::fs::remove_file(&path).ok();
}
