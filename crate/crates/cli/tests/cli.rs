//! End-to-end tests of the binary: exit codes, printed values, file
//! formats, and the sync -> verify JSON round trip.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_su2-mintime"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON on stdout")
}

/// Parse a curve CSV: skips `#` metadata, checks the header, returns rows.
fn parse_curve_csv(path: &Path) -> Vec<(f64, f64, f64, f64)> {
    let body = std::fs::read_to_string(path).expect("csv readable");
    let mut lines = body.lines().filter(|l| !l.starts_with('#'));
    assert_eq!(lines.next(), Some("omega,t,x,y"), "{}", path.display());
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().unwrap()).collect();
            assert_eq!(v.len(), 4);
            (v[0], v[1], v[2], v[3])
        })
        .collect()
}

#[test]
fn solve_swap_prints_golden_time() {
    let out = run(&["solve", "--target", "swap", "--gamma", "1", "--json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert!((v["t_star"].as_f64().unwrap() - PI / 2.0).abs() < 1e-6);
    assert!((v["omega_drift"].as_f64().unwrap() - 1.0).abs() < 1e-6);

    // human output carries 9 decimals
    let out = run(&["solve", "--target", "swap", "--gamma", "1"]);
    assert!(stdout(&out).contains("1.570796327"));
}

#[test]
fn solve_identity_is_instant() {
    let out = run(&["solve", "--target", "identity", "--gamma", "0.7", "--json"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["t_star"].as_f64().unwrap(), 0.0);
}

#[test]
fn solve_boundary_matches_closed_form() {
    let psi = PI;
    let out = run(&[
        "solve",
        "--target",
        &format!("boundary:{psi}"),
        "--gamma",
        "1",
        "--json",
    ]);
    assert!(out.status.success());
    let t = json(&out)["t_star"].as_f64().unwrap();
    assert!((t - PI / 2.0f64.sqrt()).abs() < 1e-5, "t = {t}");
}

#[test]
fn solve_rejects_bad_input() {
    assert_eq!(
        run(&["solve", "--target", "swap", "--gamma", "-1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["solve", "--target", "nonsense", "--gamma", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["solve", "--target", "swap"]).status.code(), Some(2));
}

#[test]
fn sync_two_swaps_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("two_swap.toml");
    std::fs::write(
        &problem,
        r#"
[[system]]
gamma_max = 1.0
alpha = [0.0, 0.0]
beta = [1.0, 0.0]

[[system]]
gamma_max = 0.5
alpha = [0.0, 0.0]
beta = [0.26749882862458735, 0.963558185417193]
"#,
    )
    .unwrap();

    let out = bin()
        .args(["sync", "--problem"])
        .arg(&problem)
        .args(["--json", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert!((v["plan"]["t_common"].as_f64().unwrap() - PI).abs() < 1e-6);
    for law in v["plan"]["laws"].as_array().unwrap() {
        assert!((law["gamma"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    }
    assert!(v["verification"]["pass"].as_bool().unwrap());
    let sync_distances: Vec<f64> = v["verification"]["distances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_f64().unwrap())
        .collect();
    assert!(sync_distances.iter().all(|d| *d <= 1e-6));

    // verify reads the exported plan back and reproduces the distances
    let plan_file = dir.path().join("sync_plan.json");
    assert!(plan_file.exists());
    let out = bin()
        .args(["verify", "--plan"])
        .arg(&plan_file)
        .arg("--json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json(&out);
    let verify_distances: Vec<f64> = v["verification"]["distances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_f64().unwrap())
        .collect();
    assert_eq!(sync_distances.len(), verify_distances.len());
    for (a, b) in sync_distances.iter().zip(&verify_distances) {
        assert!((a - b).abs() <= 1e-12, "round trip distances differ: {a} vs {b}");
    }
}

#[test]
fn sync_single_system_matches_solve() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("one.toml");
    std::fs::write(
        &problem,
        "[[system]]\ngamma_max = 0.8\nalpha = [0.0, 0.0]\nbeta = [1.0, 0.0]\n",
    )
    .unwrap();
    let out = bin()
        .args(["sync", "--problem"])
        .arg(&problem)
        .arg("--json")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v = json(&out);
    let t_common = v["plan"]["t_common"].as_f64().unwrap();

    let out = run(&["solve", "--target", "swap", "--gamma", "0.8", "--json"]);
    let t_solve = json(&out)["t_star"].as_f64().unwrap();
    assert!((t_common - t_solve).abs() < 1e-8);
}

#[test]
fn sync_rejects_invalid_files() {
    let dir = tempfile::tempdir().unwrap();
    let bad_gamma = dir.path().join("bad.toml");
    std::fs::write(&bad_gamma, "[[system]]\ngamma_max = 0.0\npsi = 1.0\n").unwrap();
    let out = bin().args(["sync", "--problem"]).arg(&bad_gamma).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 2"), "diagnostic lacks a line number: {err}");

    let malformed = dir.path().join("malformed.toml");
    std::fs::write(&malformed, "[[system]\ngamma_max = 1.0\n").unwrap();
    let out = bin().args(["sync", "--problem"]).arg(&malformed).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 1"), "parser diagnostic lacks position: {err}");
}

#[test]
fn curves_frontline_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "curves",
            "--kind",
            "frontline",
            "--gamma",
            "1",
            "--t-list",
            "1,1.1,2,3",
            "--n",
            "257",
            "--svg",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for t in ["1.000000", "1.100000", "2.000000", "3.000000"] {
        let csv = dir.path().join(format!("frontline_T{t}.csv"));
        let rows = parse_curve_csv(&csv);
        assert_eq!(rows.len(), 257);
        // frontline endpoints sit on the unit circle
        for row in [rows.first().unwrap(), rows.last().unwrap()] {
            let r = (row.2 * row.2 + row.3 * row.3).sqrt();
            assert!((r - 1.0).abs() < 1e-9, "endpoint radius {r} in {}", csv.display());
        }
        assert!(dir.path().join(format!("frontline_T{t}.svg")).exists());
    }
}

#[test]
fn curves_critical_and_separatrix() {
    let dir = tempfile::tempdir().unwrap();
    let gamma = 1.0 / 2.0f64.sqrt();
    let out = bin()
        .args(["curves", "--kind", "critical", "--gamma", &gamma.to_string(), "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(dir.path().join("critical.csv")).unwrap();
    assert!(body.contains("omega_c=1.5"), "critical header: {body}");

    let out = bin()
        .args([
            "curves",
            "--kind",
            "separatrix",
            "--gamma",
            &gamma.to_string(),
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let path = dir.path().join("separatrix.csv");
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("radius=0.666666666666666"), "separatrix header: {body}");
    // every sample lies on the circle centered at (1/3, 0) with radius 2/3
    for (_, _, x, y) in parse_curve_csv(&path) {
        let r = ((x - 1.0 / 3.0).powi(2) + y * y).sqrt();
        assert!((r - 2.0 / 3.0).abs() < 1e-9);
    }
}

#[test]
fn curves_synthesis_family() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args([
            "curves",
            "--kind",
            "synthesis",
            "--gamma",
            "0.70710678118654752",
            "--omega-list",
            "-3,-1,0,0.15,0.675",
            "--n",
            "129",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let listing = stdout(&out);
    assert!(listing.contains("traj_w-3.0000.csv"));
    assert!(dir.path().join("critical.csv").exists());
    assert!(dir.path().join("separatrix.csv").exists());
    // trajectories start at (1, 0) and end on the unit circle
    for name in ["traj_w-3.0000.csv", "traj_w+0.6750.csv"] {
        let rows = parse_curve_csv(&dir.path().join(name));
        let first = rows.first().unwrap();
        assert!((first.2 - 1.0).abs() < 1e-12 && first.3.abs() < 1e-12);
        let last = rows.last().unwrap();
        assert!(((last.2 * last.2 + last.3 * last.3).sqrt() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn curves_rejects_missing_parameters() {
    assert_eq!(
        run(&["curves", "--kind", "frontline", "--gamma", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["curves", "--kind", "synthesis", "--gamma", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["curves", "--kind", "critical"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_swap_monotone_no_jumps() {
    let out = run(&[
        "sweep",
        "--target",
        "swap",
        "--gamma-range",
        "0.2:2",
        "--n",
        "25",
    ]);
    assert!(out.status.success());
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("gamma,t_star,jump"));
    let mut prev = f64::INFINITY;
    for line in lines {
        let v: Vec<&str> = line.split(',').collect();
        let t: f64 = v[1].parse().unwrap();
        assert!(t <= prev + 1e-9, "sweep not monotone");
        assert_eq!(v[2], "0", "unexpected jump flag");
        prev = t;
    }
}

#[test]
fn sweep_rejects_reversed_range() {
    let out = run(&[
        "sweep",
        "--target",
        "swap",
        "--gamma-range",
        "2:0.2",
        "--n",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
}
