//! Acceptance suite. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p stherm-cli --test acceptance -- --nocapture --test-threads 1`.

mod common;

use std::collections::VecDeque;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{configs_dir, linspace, parity_model, random_hermitian, rng, seeded_block_models};
use rand::Rng;
use stherm_cli::config::{Spacing, SweepGrid};
use stherm_cli::sweep::{run_sweep, ResultRow};
use stherm_core::analysis::{build_report, erasure_cost, Classification, ThermoReport};
use stherm_core::demon::verify_circuit;
use stherm_core::ergotropy::ergotropy;
use stherm_core::linalg::eigh;
use stherm_core::thermal::{gibbs_state, s_thermalize, Temperature, ThermalModel};

fn report_line(id: u32, name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("[acceptance] {verdict} criterion {id:>2} ({name}): {detail}");
}

fn temp(v: f64) -> Temperature {
    Temperature::new(v).unwrap()
}

/// Parity model and the seeded models, each on a 20x20 grid over [0.05, 2].
fn identity_instances() -> Vec<(ThermalModel, Vec<f64>)> {
    let axis = linspace(0.05, 2.0, 20);
    std::iter::once(parity_model())
        .chain(seeded_block_models())
        .map(|m| (m, axis.clone()))
        .collect()
}

fn for_each_report(mut f: impl FnMut(&ThermalModel, &ThermoReport)) {
    for (model, axis) in identity_instances() {
        for &t0 in &axis {
            for &t in &axis {
                let r = build_report(&model, temp(t0), temp(t)).unwrap();
                f(&model, &r);
            }
        }
    }
}

#[test]
fn criterion_01_free_energy_identity() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut points = 0;
    for_each_report(|_, r| {
        let info = (r.s_ss - r.s_gibbs + r.rel_ent_ss_gibbs) / r.t.beta();
        worst = worst.max((r.e_ss - r.e_gibbs - info).abs());
        points += 1;
    });
    let elapsed = start.elapsed();
    let ok = worst <= 1e-9 && elapsed <= Duration::from_secs(5);
    report_line(
        1,
        "energy gap = T(dS + relative entropy)",
        ok,
        &format!("{points} points, max residual {worst:.2e}, {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_02_erasure_energy_identity() {
    let mut worst = 0.0f64;
    let mut points = 0;
    for_each_report(|model, r| {
        let rho0 = gibbs_state(model.hamiltonian(), r.t0).unwrap();
        let cost = erasure_cost(model, &rho0, r.t).unwrap();
        let gap = (cost - r.delta_s_sys) / r.t.beta();
        worst = worst.max((r.e_ss - r.e_gibbs - gap).abs());
        points += 1;
    });
    let ok = worst <= 1e-9;
    report_line(
        2,
        "energy gap = T(erasure cost - dS_sys)",
        ok,
        &format!("{points} points, max residual {worst:.2e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_03_erasure_additivity_and_positivity() {
    let mut worst = 0.0f64;
    let mut min_cost = f64::INFINITY;
    for_each_report(|_, r| {
        worst = worst.max((r.erasure_cost - (r.delta_s_sys + r.delta_s_bath)).abs());
        min_cost = min_cost.min(r.erasure_cost);
    });
    let ok = worst <= 1e-9 && min_cost >= -1e-9;
    report_line(
        3,
        "erasure additivity and positivity",
        ok,
        &format!("max residual {worst:.2e}, min cost {min_cost:.3e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_04_break_even_consistency() {
    let mut disagreements = 0;
    let mut diagonal_bad = 0;
    let mut compared = 0;
    for_each_report(|_, r| {
        if r.t0.value() == r.t.value() {
            let dev = [
                r.e_ss - r.e_gibbs,
                r.s_ss - r.s_gibbs,
                r.rel_ent_ss_gibbs,
                r.delta_s_bath,
            ]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
            let class_ok = matches!(
                r.classification,
                Classification::Undefined | Classification::BreakEven
            );
            if dev > 1e-10 || !class_ok {
                diagonal_bad += 1;
            }
            return;
        }
        let Some(lambda) = r.lambda else { return };
        // inside the break-even band the bath sign is round-off
        if (lambda - 1.0).abs() <= 1e-8 {
            return;
        }
        compared += 1;
        if r.classification != r.bath_verdict() {
            disagreements += 1;
        }
    });
    let ok = disagreements == 0 && diagonal_bad == 0;
    report_line(
        4,
        "sign(lambda - 1) matches bath verdict",
        ok,
        &format!("{compared} compared, {disagreements} disagreements, {diagonal_bad} bad diagonal points"),
    );
    assert!(ok);
}

/// 100 points with step 0.02 covering (0.01, 2].
fn parity_sweep() -> (SweepGrid, Vec<ResultRow>, Duration) {
    let axis: Vec<f64> = (1..=100).map(|i| i as f64 * 0.02).collect();
    let grid = SweepGrid::new(axis.clone(), axis, Spacing::Linear).unwrap();
    let start = Instant::now();
    let rows = run_sweep(&parity_model(), &grid, 1);
    (grid, rows, start.elapsed())
}

/// 4-connected components of the cells where `mask` holds, as lists of (row, col).
fn components(mask: &[Vec<bool>]) -> Vec<Vec<(usize, usize)>> {
    let n = mask.len();
    let m = mask[0].len();
    let mut seen = vec![vec![false; m]; n];
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if !mask[i][j] || seen[i][j] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([(i, j)]);
            seen[i][j] = true;
            while let Some((a, b)) = queue.pop_front() {
                comp.push((a, b));
                let neighbours = [
                    (a.wrapping_sub(1), b),
                    (a + 1, b),
                    (a, b.wrapping_sub(1)),
                    (a, b + 1),
                ];
                for (x, y) in neighbours {
                    if x < n && y < m && mask[x][y] && !seen[x][y] {
                        seen[x][y] = true;
                        queue.push_back((x, y));
                    }
                }
            }
            out.push(comp);
        }
    }
    out
}

#[test]
fn criterion_05_two_ergotropy_islands() {
    let (grid, rows, elapsed) = parity_sweep();
    let n = grid.t_values.len();
    let mask: Vec<Vec<bool>> = rows
        .chunks(n)
        .map(|c| c.iter().map(|r| r.ergotropy.unwrap() > 1e-6).collect())
        .collect();
    let comps = components(&mask);
    let side = |c: &Vec<(usize, usize)>| {
        if c.iter().all(|&(i, j)| grid.t0_values[i] < grid.t_values[j]) {
            Some(true)
        } else if c.iter().all(|&(i, j)| grid.t0_values[i] > grid.t_values[j]) {
            Some(false)
        } else {
            None
        }
    };
    let sides: Vec<Option<bool>> = comps.iter().map(side).collect();
    let diag_max = rows
        .iter()
        .filter(|r| r.t0 == r.t)
        .map(|r| r.ergotropy.unwrap().abs())
        .fold(0.0, f64::max);
    let ok = comps.len() == 2
        && sides.contains(&Some(true))
        && sides.contains(&Some(false))
        && diag_max <= 1e-12
        && elapsed <= Duration::from_secs(30);
    let sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
    report_line(
        5,
        "two ergotropy islands",
        ok,
        &format!("components {sizes:?}, diagonal max {diag_max:.1e}, sweep {elapsed:.2?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_06_asymptotic_and_excess_ergotropy() {
    let (_, rows, _) = parity_sweep();
    let mut diag_max = 0.0f64;
    let mut off_min = f64::INFINITY;
    let mut excess_min = f64::INFINITY;
    let mut missing = 0;
    for r in &rows {
        let (Some(a), Some(x)) = (r.asymptotic_ergotropy, r.excess_ergotropy) else {
            missing += 1;
            continue;
        };
        if r.t0 == r.t {
            diag_max = diag_max.max(a);
        } else {
            off_min = off_min.min(a);
        }
        excess_min = excess_min.min(x);
    }
    let ok = missing == 0 && diag_max <= 1e-10 && off_min > 1e-10 && excess_min >= -1e-9;
    report_line(
        6,
        "asymptotic ergotropy zero set and excess",
        ok,
        &format!("diagonal max {diag_max:.1e}, off-diagonal min {off_min:.2e}, excess min {excess_min:.1e}, {missing} missing"),
    );
    assert!(ok);
}

#[test]
fn criterion_07_demon_pathways() {
    let required = [
        ("demon_marginal_is_steady_state", 1e-12),
        ("pathway_b_is_gibbs", 1e-10),
        ("pathway_c_is_gibbs", 1e-10),
        ("mutual_information_after_erasure", 1e-10),
        ("correlation_entropy_drop", 1e-10),
    ];
    let model = parity_model();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for (t0, t) in [(0.05, 1.0), (1.0, 0.05), (0.5, 0.5)] {
        let checks = verify_circuit(&model, temp(t0), temp(t)).unwrap();
        for c in &checks {
            worst = worst.max(c.residual);
            if !c.passed() {
                failures.push(format!("{} at ({t0}, {t})", c.name));
            }
        }
        for (name, tol) in required {
            match checks.iter().find(|c| c.name == name) {
                Some(c) if c.residual <= tol => {}
                _ => failures.push(format!("{name} at ({t0}, {t})")),
            }
        }
    }
    let ok = failures.is_empty();
    report_line(
        7,
        "demon circuit pathways",
        ok,
        &format!("max residual {worst:.1e}, failures {failures:?}"),
    );
    assert!(ok);
}

#[test]
fn criterion_08_ergotropy_oracle() {
    #[allow(clippy::excessive_precision)]
    const ORACLE: f64 = 0.031395504417254637674;
    let model = parity_model();
    let rho0 = gibbs_state(model.hamiltonian(), temp(0.05)).unwrap();
    let rho_ss = s_thermalize(&model, &rho0, temp(1.0)).unwrap();
    let w = ergotropy(&rho_ss, model.hamiltonian()).unwrap();
    let err = (w - ORACLE).abs();
    let ok = err <= 1e-9;
    report_line(
        8,
        "ergotropy oracle point",
        ok,
        &format!("value {w:.15}, error {err:.1e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_09_eigensolver_quality() {
    let mut r = rng(0xe16);
    let mut worst_rec = 0.0f64;
    let mut worst_orth = 0.0f64;
    for _ in 0..200 {
        let dim = r.gen_range(2..=16);
        let a = random_hermitian(&mut r, dim);
        let es = eigh(&a).unwrap();
        let rec = es.reconstruct_with(|x| x).sub(a.matrix()).max_abs() / a.matrix().max_abs();
        worst_rec = worst_rec.max(rec);
        worst_orth = worst_orth.max(es.orthonormality_residual());
    }
    let ok = worst_rec <= 1e-10 && worst_orth <= 1e-10;
    report_line(
        9,
        "eigensolver quality",
        ok,
        &format!("200 matrices, reconstruction {worst_rec:.1e} relative, orthonormality {worst_orth:.1e}"),
    );
    assert!(ok);
}

#[test]
fn criterion_10_deterministic_output() {
    let dir = tempfile::tempdir().unwrap();
    let config = configs_dir().join("parity_four_level.json");
    let run = |jobs: &str| {
        let out = dir.path().join(format!("jobs{jobs}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_stherm"))
            .args(["sweep", "--config"])
            .arg(&config)
            .args(["--grid", "0.01:2:40,0.01:2:40", "--jobs", jobs, "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(out).unwrap()
    };
    let serial = run("1");
    let parallel = run("8");
    let ok = serial == parallel && !serial.is_empty();
    report_line(
        10,
        "byte-identical output for --jobs 1 and 8",
        ok,
        &format!("{} bytes", serial.len()),
    );
    assert!(ok);
}
