use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use cyclic_qm::operators::continuum_deviation;
use cyclic_qm::Dim;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-qm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn ops_passes_on_three_sites() {
    let out = run(&["ops", "--dim", "3"]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    assert_eq!(rep["pass"], true);
    assert!(rep["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
}

#[test]
fn ops_rejects_one_site() {
    let out = run(&["ops", "--dim", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("at least 2"));
}

#[test]
fn ops_json_file_holds_antiperiodic_translation() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("out.json");
    let out = run(&["ops", "--dim", "4", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let rep: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let t = &rep["details"]["t"];
    for r in 0..4 {
        for s in 0..4 {
            let want = match (r, s) {
                (0, 3) => -1.0,
                _ if r == s + 1 => 1.0,
                _ => 0.0,
            };
            assert_eq!(t[r][s][0].as_f64().unwrap(), want, "T[{r}][{s}]");
            assert_eq!(t[r][s][1].as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn scale_a_and_tol_flags() {
    let rep = json(&run(&["ops", "--dim", "5", "--scale-a", "0.3"]));
    assert!((rep["scales"][0]["a"].as_f64().unwrap() - 0.3).abs() < 1e-15);
    let g = rep["scales"][0]["g"].as_f64().unwrap();
    assert!((0.3 * g * 5.0 - 2.0 * PI).abs() < 1e-12);
    let out = run(&["ops", "--dim", "5", "--tol", "0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(check(&json(&out), "t_unitarity")["threshold"], 0.0);
    assert_eq!(code(&run(&["ops", "--dim", "5", "--scale-a", "-1"])), 2);
}

#[test]
fn sweep_decreases_and_matches_library_bit_for_bit() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("sweep.csv");
    let out = run(&[
        "commutator-sweep",
        "--dims",
        "8,16,32,64",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    assert_eq!(check(&rep, "non_decreasing_steps")["pass"], true);
    let rows = csv_rows(&fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 4);
    for (row, n) in rows.iter().zip([8, 16, 32, 64]) {
        assert_eq!(row[0], n.to_string());
        let lib = continuum_deviation(Dim::new(n).unwrap()).unwrap();
        assert_eq!(row[1].parse::<f64>().unwrap().to_bits(), lib.to_bits());
    }
    for (entry, n) in rep["details"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .zip([8, 16, 32, 64])
    {
        let lib = continuum_deviation(Dim::new(n).unwrap()).unwrap();
        assert_eq!(
            entry["deviation"].as_f64().unwrap().to_bits(),
            lib.to_bits()
        );
    }
}

#[test]
fn sweep_single_and_small_dims() {
    let rep = json(&run(&["commutator-sweep", "--dims", "16"]));
    assert!(rep["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["name"] != "non_decreasing_steps"));
    let rep = json(&run(&["commutator-sweep", "--dims", "2"]));
    assert!(rep["details"]["rows"][0]["deviation"].as_f64().unwrap() > 0.5);
}

#[test]
fn mub_two_sites_phase_and_grid() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("grid.csv");
    let out = run(&["mub", "--dim", "2", "--csv", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let rep = json(&out);
    let at_zero = rep["details"]["gauss_phases"]
        .as_array()
        .unwrap()
        .iter()
        .find(|p| p["b"] == 0.0)
        .unwrap();
    let (re, im) = (
        at_zero["phase"][0].as_f64().unwrap(),
        at_zero["phase"][1].as_f64().unwrap(),
    );
    assert!((re - (PI / 4.0).cos()).abs() < 1e-12 && (im - (PI / 4.0).sin()).abs() < 1e-12);

    let rows = csv_rows(&fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 3 * 4);
    for pair in ["position_momentum", "position_eta", "momentum_eta"] {
        for r in ["-0.5", "0.5"] {
            let sum: f64 = rows
                .iter()
                .filter(|row| row[0] == pair && row[1] == r)
                .map(|row| row[3].parse::<f64>().unwrap().powi(2))
                .sum();
            assert!((sum - 1.0).abs() < 1e-12, "{pair} row {r}: {sum}");
        }
    }
}

#[test]
fn mub_five_sites_is_unbiased() {
    let rep = json(&run(&["mub", "--dim", "5"]));
    assert_eq!(rep["pass"], true);
    for name in [
        "unbiased_position_momentum",
        "unbiased_position_eta",
        "unbiased_momentum_eta",
    ] {
        assert!(check(&rep, name)["measured"].as_f64().unwrap() <= 1e-10);
    }
    assert!(
        check(&rep, "xp_difference_bias")["measured"]
            .as_f64()
            .unwrap()
            > 1e-3
    );
}

/// Probability table grouped by time.
fn snapshots(text: &str) -> Vec<(f64, Vec<f64>)> {
    let mut out: Vec<(f64, Vec<f64>)> = Vec::new();
    for row in csv_rows(text) {
        let t: f64 = row[0].parse().unwrap();
        let p: f64 = row[2].parse().unwrap();
        match out.last_mut() {
            Some((last, ps)) if *last == t => ps.push(p),
            _ => out.push((t, vec![p])),
        }
    }
    out
}

#[test]
fn evolve_delta_revives() {
    let out = run(&[
        "evolve", "--dim", "3", "--preset", "delta", "--until", "revival",
    ]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,x,probability\n"));
    let snaps = snapshots(&text);
    let (first, last) = (&snaps[0].1, &snaps.last().unwrap().1);
    assert!((first[1] - 1.0).abs() < 1e-15 && first[0] < 1e-30 && first[2] < 1e-30);
    for (a, b) in first.iter().zip(last) {
        assert!((a - b).abs() <= 1e-9);
    }
}

#[test]
fn evolve_two_sites_revives_at_eight_tau() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("rep.json");
    let out = run(&[
        "evolve",
        "--dim",
        "2",
        "--preset",
        "uniform",
        "--until",
        "revival",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let rep: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let tau = rep["details"]["tau"].as_f64().unwrap();
    assert!((rep["details"]["revival_period"].as_f64().unwrap() - 8.0 * tau).abs() < 1e-12);
    assert_eq!(check(&rep, "revival")["pass"], true);
    let snaps = snapshots(&String::from_utf8(out.stdout).unwrap());
    assert!((snaps.last().unwrap().0 - 8.0 * tau).abs() < 1e-12);
}

#[test]
fn evolve_single_time_echoes_state_file() {
    let dir = TempDir::new().unwrap();
    let state = dir.path().join("psi.json");
    fs::write(&state, "[[0.6, 0.0], [0.0, 0.8], [0.0, 0.0]]").unwrap();
    let out = run(&[
        "evolve",
        "--dim",
        "3",
        "--state",
        state.to_str().unwrap(),
        "--times",
        "0",
    ]);
    assert_eq!(code(&out), 0);
    let snaps = snapshots(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(snaps.len(), 1);
    for (p, want) in snaps[0].1.iter().zip([0.36, 0.64, 0.0]) {
        assert!((p - want).abs() < 1e-14);
    }
}

#[test]
fn evolve_rejects_bad_state_files() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "[[1, 0], [0, 1]").unwrap();
    let out = run(&["evolve", "--dim", "2", "--state", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
    fs::write(&bad, "[[1, 0], [0, 1]]").unwrap();
    assert_eq!(
        code(&run(&[
            "evolve",
            "--dim",
            "3",
            "--state",
            bad.to_str().unwrap()
        ])),
        2
    );
    fs::write(&bad, "[[0, 0], [0, 0]]").unwrap();
    assert_eq!(
        code(&run(&[
            "evolve",
            "--dim",
            "2",
            "--state",
            bad.to_str().unwrap()
        ])),
        2
    );
}

#[test]
fn sums_match_and_mark_singular_points() {
    let rep = json(&run(&["sums", "--dim", "3"]));
    assert_eq!(rep["pass"], true);
    assert!(
        check(&rep, "closed_vs_direct")["measured"]
            .as_f64()
            .unwrap()
            <= 1e-9
    );

    let rep = json(&run(&["sums", "--dim", "2"]));
    let rows = rep["details"]["rows"].as_array().unwrap();
    let half: Vec<_> = rows.iter().filter(|r| r["r"] == 0.5).collect();
    assert_eq!(half.len(), 4);
    for r in &half {
        assert!(r["residual"].as_f64().unwrap() <= 1e-10);
    }
    assert!(rows
        .iter()
        .any(|r| r["status"] == "skipped: exact-case route"));
}

#[test]
fn sums_are_deterministic_per_seed() {
    let a = json(&run(&["sums", "--dim", "4", "--seed", "9"]));
    let b = json(&run(&["sums", "--dim", "4", "--seed", "9"]));
    let c = json(&run(&["sums", "--dim", "4", "--seed", "10"]));
    assert_eq!(a["details"]["rows"], b["details"]["rows"]);
    assert_ne!(a["details"]["rows"], c["details"]["rows"]);
}

#[test]
fn pauli_exit_codes_and_solutions() {
    let out = run(&["pauli", "--rho-sq", "0.5", "--varpi-sq", "1.0"]);
    assert_eq!(code(&out), 0);
    let rec = json(&out);
    assert_eq!(rec["alpha_solutions"].as_array().unwrap().len(), 1);
    assert!((rec["alpha_solutions"][0].as_f64().unwrap() - PI / 2.0).abs() < 1e-12);

    let out = run(&["pauli", "--rho-sq", "1.0", "--varpi-sq", "1.0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["compatible"], false);

    let rec = json(&run(&["pauli", "--rho-sq", "0.5", "--varpi-sq", "0.5"]));
    let sols: Vec<f64> = rec["alpha_solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(sols.len() == 2 && sols[0].abs() < 1e-12 && (sols[1] - PI).abs() < 1e-12);

    assert_eq!(
        code(&run(&["pauli", "--rho-sq", "1.5", "--varpi-sq", "0.5"])),
        2
    );
    assert_eq!(code(&run(&["pauli", "--rho-sq", "0.5"])), 2);
}

#[test]
fn pauli_sweep_draws_the_disk() {
    let out = run(&["pauli", "--sweep", "11"]);
    assert_eq!(code(&out), 0);
    let rows = csv_rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 121);
    for row in rows {
        let (r, v): (f64, f64) = (row[0].parse().unwrap(), row[1].parse().unwrap());
        let inside = (r - 0.5).powi(2) + (v - 0.5).powi(2) <= 0.25 + 1e-12;
        assert_eq!(row[2], inside.to_string(), "({r}, {v})");
    }
    assert_eq!(code(&run(&["pauli", "--sweep", "1"])), 2);
}

#[test]
fn reports_round_trip_exactly() {
    let out = run(&["mub", "--dim", "6"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let first: Value = serde_json::from_str(&text).unwrap();
    let again: Value = serde_json::from_str(&serde_json::to_string(&first).unwrap()).unwrap();
    assert_eq!(first, again);
    for c in first["checks"].as_array().unwrap() {
        let v = c["measured"].as_f64().unwrap();
        let printed = serde_json::to_string(&c["measured"]).unwrap();
        assert_eq!(printed.parse::<f64>().unwrap().to_bits(), v.to_bits());
    }
}
