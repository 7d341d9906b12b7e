use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use subharm::specfun::gamma_real;

fn subharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_subharm")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

/// Rows of the named CSV table as numbers (empty cells become NaN).
fn table(text: &str, name: &str) -> Vec<Vec<f64>> {
    let marker = format!("# table: {name}");
    text.lines()
        .skip_while(|l| *l != marker)
        .skip(2)
        .take_while(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(|c| if c.is_empty() { f64::NAN } else { c.parse().unwrap_or(f64::NAN) }).collect())
        .collect()
}

fn config_lines(text: &str) -> String {
    text.lines()
        .filter_map(|l| l.strip_prefix("# "))
        .filter(|l| l.contains('='))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[test]
fn zeros_reproduce_the_quoted_roots() {
    for (n, lo, hi) in [("3", 129.0, 131.0), ("5", 114.0, 116.0)] {
        let out = subharm(&["zeros", "--n", n, "--rho", "0.5"]);
        assert!(out.status.success());
        let rows = table(&stdout(&out), "zeros");
        assert_eq!(rows.len(), 1);
        assert!((lo..=hi).contains(&rows[0][3]), "n={n}: {}", rows[0][3]);
        assert_eq!(rows[0][6], 1.0);
    }
    let rows = table(&stdout(&subharm(&["zeros", "--n", "3", "--rho", "2.5"])), "zeros");
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[5].abs() < 1e-10));
}

#[test]
fn indicator_rows() {
    let out = subharm(&["indicator", "--n", "3", "--rho", "0.5", "--theta", "0deg"]);
    assert!(out.status.success());
    let row = &table(&stdout(&out), "indicator")[0];
    assert!((row[2] - 4.7123890).abs() < 1e-7 && (row[3] - 4.7123890).abs() < 1e-7);

    let out = subharm(&["indicator", "--delta", "0", "--theta", "0deg,45deg,170deg"]);
    assert!(out.status.success());
    assert!(table(&stdout(&out), "indicator").iter().all(|r| r[2] == 0.0 && r[3] == 0.0));

    let zeros = table(&stdout(&subharm(&["zeros", "--n", "3", "--rho", "0.5"])), "zeros");
    let root = format!("{:?}rad", zeros[0][4]);
    let out = subharm(&["indicator", "--n", "3", "--rho", "0.5", "--theta", &root]);
    assert!(table(&stdout(&out), "indicator")[0][2].abs() < 1e-6);
}

#[test]
fn indicator_at_pi_is_minus_infinity() {
    let out = subharm(&["indicator", "--theta", "180deg"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().last().unwrap().contains("-inf"));
}

#[test]
fn mellin_verify_passes_and_fails_by_tolerance() {
    let out = subharm(&["mellin-verify"]);
    assert!(out.status.success());
    let rows = table(&stdout(&out), "mellin");
    assert_eq!(rows.len(), 60);
    assert!(rows.iter().all(|r| r[8] <= 1e-8));
    let out = subharm(&["mellin-verify", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_rows_are_deterministic() {
    let a = subharm(&["mellin-verify", "--random", "6", "--seed", "7"]);
    let b = subharm(&["mellin-verify", "--random", "6", "--seed", "7"]);
    let c = subharm(&["mellin-verify", "--random", "6", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(table(&stdout(&a), "mellin").len(), 66);
}

#[test]
fn echoed_config_reproduces_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let first = subharm(&["indicator", "--n", "4", "--rho", "1.5", "--delta", "2.5", "--theta", "10deg,1.2rad,170deg"]);
    assert!(first.status.success());
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, config_lines(&stdout(&first))).unwrap();
    let again = subharm(&["indicator", "--config", cfg.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(first.stdout, again.stdout);
    // flags override the file
    let over = subharm(&["indicator", "--config", cfg.to_str().unwrap(), "--delta", "1"]);
    assert!(stdout(&over).contains("# delta=1.0\n"));
}

#[test]
fn json_mirrors_csv() {
    let csv = stdout(&subharm(&["zeros", "--n", "5", "--rho", "2.7"]));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&subharm(&["zeros", "--n", "5", "--rho", "2.7", "--format", "json"]))).unwrap();
    assert_eq!(json["config"]["n"], 5);
    let rows = json["tables"][0]["rows"].as_array().unwrap();
    let csv_rows = table(&csv, "zeros");
    assert_eq!(rows.len(), csv_rows.len());
    for (j, c) in rows.iter().zip(&csv_rows) {
        let beta = j[4].as_f64().unwrap();
        assert_eq!(beta, c[4]);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeros.csv");
    let out = subharm(&["zeros", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().starts_with("# subharm "));
}

#[test]
fn simulate_power_law_approaches_indicator() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("model.txt");
    fs::write(&model, "# density\npowerlaw delta=1.0 rho=0.5\n").unwrap();
    let out = subharm(&["simulate", "--model", model.to_str().unwrap(), "--n", "3", "--theta", "90deg"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let limits = table(&stdout(&out), "limits");
    assert!(limits[0].last().unwrap().abs() < 1e-2);
    assert_eq!(table(&stdout(&out), "sweep").len(), 9);
}

#[test]
fn simulate_single_atom_is_one_kernel_term() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("atom.txt");
    fs::write(&model, "atom t=2.0 mass=3.0\n").unwrap();
    let out = subharm(&["simulate", "--model", model.to_str().unwrap(), "--radii", "1", "--theta", "90deg"]);
    assert!(out.status.success());
    let u = table(&stdout(&out), "values")[0][2];
    // q = 0: mass · t^{-1} (1 - t/|x - y|) with |x - y| = √5
    let exact = 3.0 * 0.5 * (1.0 - 2.0 / 5f64.sqrt());
    assert!((u - exact).abs() < 1e-14, "{u} vs {exact}");
}

#[test]
fn simulate_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "powerlaw delta=1\n").unwrap();
    assert_eq!(subharm(&["simulate", "--model", bad.to_str().unwrap()]).status.code(), Some(4));
    let atom = dir.path().join("atom.txt");
    fs::write(&atom, "atom t=2.0 mass=1.0\n").unwrap();
    let out = subharm(&["simulate", "--model", atom.to_str().unwrap(), "--radii", "2", "--theta", "180deg"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t = 2"));
    assert_eq!(subharm(&["simulate"]).status.code(), Some(4));
}

#[test]
fn solve_order_reports() {
    let out = subharm(&["solve-order", "--n", "3", "--target", &format!("{:?}", PI / 4.0)]);
    assert!(out.status.success());
    assert!((table(&stdout(&out), "order")[0][2] - 0.5).abs() < 1e-6);

    let out = subharm(&["solve-order", "--n", "3", "--target", "1e6"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("0.785398") && err.contains(", 1)"), "{err}");

    let target = gamma_real(2.7).unwrap() * gamma_real(1.3).unwrap() / 2.0;
    let out = subharm(&["solve-order", "--n", "4", "--target", &format!("{target:?}")]);
    assert!((table(&stdout(&out), "order")[0][2] - 0.3).abs() < 1e-6);
}

#[test]
fn counterexample_oscillates_only_off_the_root() {
    let out = subharm(&["counterexample", "--rho", "0.5", "--points", "401"]);
    assert!(out.status.success());
    let summary = table(&stdout(&out), "oscillation");
    assert_eq!(summary.len(), 2);
    assert!(summary[0][3] >= 1.9);
    assert!(summary[1][3] <= 1e-12);
    assert!(summary.iter().all(|r| r[4] >= 0.0));
}

#[test]
fn usage_errors_exit_with_parse_code() {
    assert_eq!(subharm(&["indicator", "--theta", "30"]).status.code(), Some(4));
    assert_eq!(subharm(&["indicator", "--format", "xml"]).status.code(), Some(4));
    assert_eq!(subharm(&["nonsense"]).status.code(), Some(4));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "n=3\nwhatever=1\n").unwrap();
    let out = subharm(&["zeros", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(subharm(&["--help"]).status.success());
}

#[test]
fn domain_errors_exit_with_code_3() {
    assert_eq!(subharm(&["zeros", "--n", "2"]).status.code(), Some(3));
    assert_eq!(subharm(&["zeros", "--rho", "1"]).status.code(), Some(3));
}
