// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria, one test per clause. Each prints a single
//! `PASS`/`FAIL` line to the real stdout (not the captured test output),
//! then asserts.
//!
//! ```text
//! cargo test -p blockade-core --test acceptance -- --test-threads=1
//! ```

use std::io::Write;
use std::time::Instant;

use blockade_core::weakdrive::g2_closed_form;
use blockade_core::{
    check_truncation, figure_preset, g2_ratio_asymptotic, g2_zero, liouvillian,
    run_sweep_with_threads, solve_params, solve_weak_drive, Axis, Engine, FockSpace, Mode, Output,
    ParamName, ResultTable, Series, SweepSpec, SystemParams,
};
use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const KAPPA: f64 = 40.0;

fn report(id: &str, passed: bool, detail: String) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{verdict} criterion {id}: {detail}").unwrap();
    out.flush().unwrap();
    assert!(passed, "criterion {id}: {detail}");
}

fn space() -> FockSpace {
    FockSpace::new(4, 4).unwrap()
}

fn g2_me(p: &SystemParams) -> f64 {
    g2_zero(&solve_params(p, space()).unwrap(), Mode::Ccw).unwrap()
}

fn baseline() -> SystemParams {
    SystemParams::baseline()
}

fn sweep(spec: &SweepSpec) -> ResultTable {
    run_sweep_with_threads(spec, None).unwrap()
}

/// Rows of `table` whose `key` column equals `value`.
fn select(table: &ResultTable, key: &str, value: f64, column: &str) -> Vec<f64> {
    let k = table.column_index(key).unwrap();
    let c = table.column_index(column).unwrap();
    table
        .rows
        .iter()
        .filter(|r| r[k] == value)
        .map(|r| r[c])
        .collect()
}

#[test]
fn c1_baseline_point() {
    let t = Instant::now();
    let g2 = g2_me(&baseline());
    let secs = t.elapsed().as_secs_f64();
    report(
        "1",
        (g2 - 0.47).abs() <= 0.02 && secs <= 5.0,
        format!("g2 = {g2:.5} (want 0.47 +- 0.02), {secs:.2} s at cutoff 4 (limit 5 s)"),
    );
}

#[test]
fn c2_mode_coupled_point() {
    let g2 = g2_me(&baseline().with_j(30.0 * KAPPA));
    let (lo, hi) = (0.006 / 1.3, 0.006 * 1.3);
    report(
        "2",
        (lo..=hi).contains(&g2),
        format!("g2 = {g2:.5e} (want [{lo:.3e}, {hi:.3e}])"),
    );
}

#[test]
fn c3_engine_agreement() {
    let t = Instant::now();
    let mut worst = Vec::new();
    for (drive, tol) in [(1.0, 0.05), (0.1, 0.01)] {
        let mut spec = SweepSpec::new(
            baseline().with_drive(drive),
            vec![Axis::new(
                ParamName::DeltaBoth,
                -2.0 * KAPPA,
                2.0 * KAPPA,
                41,
            )],
            vec![Output::G2Ccw],
        );
        spec.engine = Engine::Both;
        spec.series = Some(Series {
            param: ParamName::JCoupling,
            values: vec![0.0, 30.0 * KAPPA],
        });
        let table = sweep(&spec);
        let me = table.column("g2_ccw").unwrap();
        let wd = table.column("g2_analytic").unwrap();
        let dev = me
            .iter()
            .zip(&wd)
            .map(|(a, b)| ((a - b) / b).abs())
            .fold(0.0, f64::max);
        worst.push((drive, dev, tol));
    }
    let secs = t.elapsed().as_secs_f64();
    let ok = worst.iter().all(|(_, dev, tol)| dev <= tol) && secs <= 300.0;
    let detail: Vec<String> = worst
        .iter()
        .map(|(e, dev, tol)| format!("eps={e}: max rel dev {dev:.3e} (limit {tol})"))
        .collect();
    report(
        "3",
        ok,
        format!("{}; {secs:.1} s total (limit 300 s)", detail.join(", ")),
    );
}

fn coupling_scan() -> ResultTable {
    let mut spec = SweepSpec::new(
        baseline(),
        vec![Axis::new(ParamName::G, 0.025 * KAPPA, 1.5 * KAPPA, 60)],
        vec![Output::G2Ccw],
    );
    spec.series = Some(Series {
        param: ParamName::JCoupling,
        values: vec![0.0, 10.0 * KAPPA, 20.0 * KAPPA, 40.0 * KAPPA],
    });
    sweep(&spec)
}

#[test]
fn c4_coupling_scan() {
    let table = coupling_scan();
    let g = select(&table, "j_coupling", 0.0, "g");
    let free = select(&table, "j_coupling", 0.0, "g2_ccw");
    let (imin, &min) = free
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let at = g[imin] / KAPPA;
    report(
        "4a",
        (min - 0.25).abs() <= 0.03 && (at - 0.2).abs() <= 0.05,
        format!(
            "J=0 minimum g2 = {min:.4} at g/kappa = {at:.3} (want 0.25 +- 0.03 at 0.2 +- 0.05)"
        ),
    );

    let curves: Vec<Vec<f64>> = [10.0, 20.0, 40.0]
        .iter()
        .map(|j| select(&table, "j_coupling", j * KAPPA, "g2_ccw"))
        .collect();
    let violations: Vec<f64> = (0..g.len())
        .filter(|&i| !(curves[0][i] > curves[1][i] && curves[1][i] > curves[2][i]))
        .map(|i| g[i] / KAPPA)
        .collect();
    report(
        "4b",
        violations.is_empty(),
        format!(
            "g2 strictly decreasing in J in {{10,20,40}}kappa at {}/{} couplings; violations at g/kappa {violations:?}",
            g.len() - violations.len(),
            g.len()
        ),
    );
}

#[test]
fn c5a_asymptotic_ratio_law() {
    let free = g2_me(&baseline());
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [10.0, 20.0, 40.0] {
        let p = baseline().with_j(m * KAPPA);
        let exact = g2_me(&p) / free;
        let predicted = g2_ratio_asymptotic(&p).unwrap().ratio;
        ok &= ((exact - predicted) / predicted).abs() <= 0.5;
        parts.push(format!(
            "J={m}kappa exact {exact:.4} vs 4kappa^2/J^2 {predicted:.4}"
        ));
    }
    report("5a", ok, format!("{} (band 50%)", parts.join("; ")));
}

#[test]
fn c5b_ratio_at_twenty_kappa() {
    let ratio = g2_me(&baseline().with_j(20.0 * KAPPA)) / g2_me(&baseline());
    report(
        "5b",
        (1e-2 / 1.5..=1e-2 * 1.5).contains(&ratio),
        format!("g2(J=20kappa)/g2(0) = {ratio:.4} (want ~1e-2, factor 1.5)"),
    );
}

#[test]
fn c5c_correlation_at_twenty_kappa() {
    let g2 = g2_me(&baseline().with_j(20.0 * KAPPA));
    report(
        "5c",
        (1e-2 / 1.5..=1e-2 * 1.5).contains(&g2),
        format!("g2(J=20kappa) = {g2:.4} (want ~1e-2, factor 1.5)"),
    );
}

#[test]
fn c6a_dephased_uncoupled() {
    let g2 = g2_me(&baseline().with_gamma_p(3.0));
    report(
        "6a",
        g2 >= 1.0,
        format!("gamma_p=3, J=0: g2 = {g2:.4} (want >= 1)"),
    );
}

#[test]
fn c6b_dephased_coupled() {
    let g2 = g2_me(&baseline().with_gamma_p(3.0).with_j(10.0 * KAPPA));
    report(
        "6b",
        (0.06 / 1.5..=0.06 * 1.5).contains(&g2),
        format!("gamma_p=3, J=10kappa: g2 = {g2:.4} (want 0.06, factor 1.5)"),
    );
}

#[test]
fn c6c_dephasing_threshold() {
    let mut spec = SweepSpec::new(
        baseline(),
        vec![Axis::new(ParamName::GammaP, 0.0, 20.0, 11)],
        vec![Output::G2Ccw],
    );
    spec.series = Some(Series {
        param: ParamName::JCoupling,
        values: vec![4.0 * KAPPA, 6.0 * KAPPA, 10.0 * KAPPA, 20.0 * KAPPA],
    });
    let table = sweep(&spec);
    let (jc, gc, vc) = (
        table.column_index("j_coupling").unwrap(),
        table.column_index("gamma_p").unwrap(),
        table.column_index("g2_ccw").unwrap(),
    );
    let worst = table
        .rows
        .iter()
        .max_by(|a, b| a[vc].total_cmp(&b[vc]))
        .unwrap();
    let above = table
        .rows
        .iter()
        .filter(|r| r[vc] >= 0.1 || r[vc].is_nan())
        .count();
    report(
        "6c",
        above == 0,
        format!(
            "{above}/{} points with J >= 4kappa have g2 >= 0.1; largest {:.4} at J={}kappa, gamma_p={}",
            table.rows.len(),
            worst[vc],
            worst[jc] / KAPPA,
            worst[gc]
        ),
    );
}

#[test]
fn c7_coupling_mismatch() {
    let p = SystemParams {
        g_a: 0.0,
        g_b: KAPPA,
        ..baseline().with_j(20.0 * KAPPA)
    };
    let g2 = g2_me(&p);
    let wd = solve_weak_drive(&p).unwrap().g2_ccw().unwrap();
    report(
        "7",
        (1e-9..=1e-7).contains(&g2),
        format!("g2 = {g2:.3e} (want 1e-8 within one decade; weak-drive route {wd:.3e})"),
    );
}

/// Detunings of strict local maxima of `p_r` for one coupling of the
/// spectrum preset.
fn reflection_peaks(j: f64) -> (Vec<f64>, f64) {
    let mut spec = figure_preset("fig2").unwrap();
    spec.series = Some(Series {
        param: ParamName::JCoupling,
        values: vec![j],
    });
    let table = sweep(&spec);
    let delta = table.column("delta").unwrap();
    let pr = table.column("p_r").unwrap();
    let peaks = (1..pr.len() - 1)
        .filter(|&i| pr[i] > pr[i - 1] && pr[i] > pr[i + 1])
        .map(|i| delta[i])
        .collect();
    (peaks, delta[1] - delta[0])
}

#[test]
fn c8a_split_resonances() {
    let j = 6.0 * KAPPA;
    let (peaks, step) = reflection_peaks(j);
    let ok = peaks.len() == 2 && (peaks[0] + j).abs() <= step && (peaks[1] - j).abs() <= step;
    report(
        "8a",
        ok,
        format!("J=6kappa: P_R maxima at {peaks:?} (want +-{j} within {step})"),
    );
}

#[test]
fn c8b_unresolved_splitting() {
    let (peaks, _) = reflection_peaks(0.8 * KAPPA);
    let in_kappa: Vec<f64> = peaks.iter().map(|d| d / KAPPA).collect();
    report(
        "8b",
        peaks.len() == 1,
        format!(
            "J=0.8kappa: {} P_R maxima at Delta/kappa {in_kappa:.3?} (want one)",
            peaks.len()
        ),
    );
}

#[test]
fn c9a_closed_form_amplitudes() {
    let mut rng = StdRng::seed_from_u64(2026);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let delta = rng.random_range(-5.0..5.0) * KAPPA;
        let p = SystemParams {
            delta,
            delta_a: delta + rng.random_range(-1.0..1.0) * KAPPA,
            j_coupling: rng.random_range(0.0..40.0) * KAPPA,
            drive: rng.random_range(0.01..2.0),
            kappa: rng.random_range(5.0..100.0),
            gamma_a: rng.random_range(0.1..5.0),
            ..baseline().with_g(rng.random_range(0.5..80.0))
        };
        let linear = solve_weak_drive(&p).unwrap();
        let (c100, c200) = blockade_core::c_amplitudes_closed_form(&p).unwrap();
        let g2 = g2_closed_form(&p).unwrap();
        worst = worst
            .max((linear.c_100m - c100).norm() / c100.norm())
            .max((linear.c_200m - c200).norm() / c200.norm())
            .max(((linear.g2_ccw().unwrap() - g2) / g2).abs());
    }
    report(
        "9a",
        worst <= 1e-10,
        format!("closed form vs linear system, 100 draws: max rel dev {worst:.3e} (limit 1e-10)"),
    );
}

#[test]
fn c9b_trace_preservation() {
    // Tr(L[E_kl]) is the sum of the diagonal-row entries of column (k, l)
    let mut worst: f64 = 0.0;
    for p in [
        baseline(),
        baseline()
            .with_j(30.0 * KAPPA)
            .with_gamma_p(3.0)
            .with_detuning(17.0),
    ] {
        let l = liouvillian(&p, space()).unwrap();
        let n = space().dim();
        let m = l.matrix();
        let scale = m.norm_max();
        for col in 0..n * n {
            let s: C64 = (0..n).map(|i| m[(i + i * n, col)]).sum();
            worst = worst.max(s.norm() / scale);
        }
    }
    report(
        "9b",
        worst <= 1e-12,
        format!("max |Tr L[E_kl]| / max|L| = {worst:.3e} over all matrix units (limit 1e-12)"),
    );
}

#[test]
fn c9c_steady_state_residual() {
    let mut worst: f64 = 0.0;
    for p in [
        baseline(),
        baseline().with_j(30.0 * KAPPA),
        baseline().with_gamma_p(3.0).with_j(10.0 * KAPPA),
    ] {
        let rho = solve_params(&p, space()).unwrap();
        // recompute independently of the solver's own bookkeeping
        let l = liouvillian(&p, space()).unwrap();
        let image = l.apply(rho.as_operator()).unwrap();
        worst = worst.max(image.max_abs()).max(rho.residual());
    }
    report(
        "9c",
        worst <= 1e-10,
        format!("max-norm steady-state residual {worst:.3e} (limit 1e-10)"),
    );
}

#[test]
fn c9d_coherent_state() {
    let g2 = g2_me(&baseline().with_g(0.0));
    report(
        "9d",
        (g2 - 1.0).abs() <= 1e-3,
        format!("g=0: g2 = {g2:.8} (want 1 +- 1e-3)"),
    );
}

#[test]
fn c9e_truncation_convergence() {
    let r = check_truncation(&baseline(), 3).unwrap();
    report(
        "9e",
        r.relative_change <= 1e-4 && r.converged,
        format!(
            "cutoff 3 -> 4: g2 {:.8} -> {:.8}, rel change {:.3e} (limit 1e-4)",
            r.g2_base, r.g2_next, r.relative_change
        ),
    );
}
