// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Self-test suite run by `blockade check`.

use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::dynamics::{liouvillian, unvectorize, SystemParams};
use crate::error::Result;
use crate::fock::{FockSpace, Mode};
use crate::meanfield::spectrum;
use crate::steadystate::{check_truncation, g2_zero, solve_params, TRUNCATION_TOLERANCE};
use crate::weakdrive::{c_amplitudes_closed_form, solve_weak_drive};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_bound(name: &'static str, value: f64, bound: f64) -> Self {
        Self {
            name,
            passed: value <= bound,
            detail: format!("{value:.3e} (bound {bound:.0e})"),
        }
    }

    fn failed(name: &'static str, err: crate::Error) -> Self {
        Self {
            name,
            passed: false,
            detail: err.to_string(),
        }
    }
}

fn run(name: &'static str, f: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    f().unwrap_or_else(|e| CheckResult::failed(name, e))
}

/// Runs every check with a fixed seed. `cutoff` sets the truncation used
/// for the master-equation checks.
pub fn run_checks(cutoff: usize) -> Vec<CheckResult> {
    let baseline = SystemParams::baseline();
    let coupled = baseline.with_j(1200.0);
    vec![
        run("trace_preservation", || {
            trace_preservation(&coupled.with_gamma_p(3.0), cutoff)
        }),
        run("hamiltonian_hermiticity", || {
            let space = FockSpace::new(cutoff, cutoff)?;
            let h = crate::dynamics::hamiltonian_eff(&coupled, space)?;
            Ok(CheckResult::from_bound(
                "hamiltonian_hermiticity",
                h.hermiticity_defect(),
                1e-14,
            ))
        }),
        run("steady_state", || {
            let rho = solve_params(&coupled, FockSpace::new(cutoff, cutoff)?)?;
            let min = rho.min_eigenvalue()?;
            Ok(CheckResult {
                name: "steady_state",
                passed: rho.residual() <= 1e-10 && min >= -1e-8,
                detail: format!("residual {:.3e}, min eigenvalue {min:.3e}", rho.residual()),
            })
        }),
        run("coherent_state_g2", || {
            let rho = solve_params(&baseline.with_g(0.0), FockSpace::new(cutoff, cutoff)?)?;
            let g2 = g2_zero(&rho, Mode::Ccw)?;
            Ok(CheckResult::from_bound(
                "coherent_state_g2",
                (g2 - 1.0).abs(),
                1e-3,
            ))
        }),
        run("closed_form_amplitudes", closed_form_agreement),
        run("lossless_spectrum", || {
            let grid: Vec<f64> = (0..401).map(|i| -400.0 + 2.0 * i as f64).collect();
            let worst = [32.0, 240.0]
                .iter()
                .map(|&j| {
                    spectrum(&baseline.with_g(0.0).with_j(j), &grid).map(|pts| {
                        pts.iter()
                            .map(|p| (p.p_t + p.p_r - 1.0).abs())
                            .fold(0.0, f64::max)
                    })
                })
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            Ok(CheckResult::from_bound("lossless_spectrum", worst, 1e-12))
        }),
        run("truncation_convergence", || {
            let r = check_truncation(&baseline, 3)?;
            Ok(CheckResult::from_bound(
                "truncation_convergence",
                r.relative_change,
                TRUNCATION_TOLERANCE,
            ))
        }),
        run("weak_drive_agreement", || {
            let p = coupled.with_drive(0.1);
            let me = g2_zero(
                &solve_params(&p, FockSpace::new(cutoff, cutoff)?)?,
                Mode::Ccw,
            )?;
            let wd = solve_weak_drive(&p)?.g2_ccw()?;
            Ok(CheckResult::from_bound(
                "weak_drive_agreement",
                ((me - wd) / wd).abs(),
                1e-2,
            ))
        }),
    ]
}

/// `Tr(L[E_ij]) = 0` on every matrix unit.
fn trace_preservation(params: &SystemParams, cutoff: usize) -> Result<CheckResult> {
    let space = FockSpace::new(cutoff.min(2), cutoff.min(2))?;
    let l = liouvillian(params, space)?;
    let scale = l.matrix().norm_max();
    let n = space.dim();
    let mut worst: f64 = 0.0;
    for col in 0..n * n {
        let mut v = vec![C64::new(0.0, 0.0); n * n];
        v[col] = C64::new(1.0, 0.0);
        let out = l.apply(&unvectorize(space, &v))?;
        worst = worst.max(out.trace().norm() / scale);
    }
    Ok(CheckResult::from_bound("trace_preservation", worst, 1e-12))
}

/// Weak-drive linear system against its closed form over random draws.
fn closed_form_agreement() -> Result<CheckResult> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = SystemParams {
            delta: rng.random_range(-200.0..200.0),
            delta_a: rng.random_range(-200.0..200.0),
            j_coupling: rng.random_range(0.0..2000.0),
            drive: rng.random_range(0.01..2.0),
            kappa: rng.random_range(5.0..100.0),
            gamma_a: rng.random_range(0.1..5.0),
            ..SystemParams::baseline().with_g(rng.random_range(1.0..80.0))
        };
        let c = solve_weak_drive(&p)?;
        let (c100, c200) = c_amplitudes_closed_form(&p)?;
        worst = worst
            .max((c.c_100m - c100).norm() / c100.norm())
            .max((c.c_200m - c200).norm() / c200.norm());
    }
    Ok(CheckResult::from_bound(
        "closed_form_amplitudes",
        worst,
        1e-10,
    ))
}
