// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Stationary solution of the master equation and photon statistics.
//!
//! The steady state is the normalized kernel vector of the Liouvillian. One
//! population equation is redundant (the generator is trace preserving), so
//! it is replaced by the trace constraint and the resulting square system is
//! solved by dense LU with partial pivoting, followed by a few sweeps of
//! iterative refinement against the unmodified generator.

use faer::{Mat, Side};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{liouvillian, unvectorize, vectorize, Superoperator, SystemParams};
use crate::error::{Error, Result};
use crate::fock::{number, FockSpace, Mode, OperatorMatrix};
use crate::lu::DenseLu;

/// Default guard on `⟨n⟩` below which `g²(0)` is reported as undefined.
pub const DEFAULT_PHOTON_GUARD: f64 = 1e-30;

/// Relative `g²(0)` change between consecutive cutoffs accepted as converged.
pub const TRUNCATION_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Largest accepted `‖L[ρ]‖_max` after normalization.
    pub residual_tol: f64,
    /// Most negative eigenvalue tolerated before the state is rejected.
    pub psd_tol: f64,
    /// Smallest `min |U_ii| / max |U_ii|` before the kernel is declared
    /// more than one-dimensional.
    pub pivot_tol: f64,
    pub refinement_steps: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            psd_tol: 1e-8,
            pivot_tol: 1e-12,
            refinement_steps: 3,
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite state on a [`FockSpace`].
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    op: OperatorMatrix,
    residual: f64,
}

impl DensityMatrix {
    /// Validates an arbitrary operator as a density matrix. The residual of
    /// such a state is NaN since no generator is attached.
    pub fn from_operator(op: OperatorMatrix) -> Result<Self> {
        let scale = op.max_abs().max(1.0);
        if op.hermiticity_defect() > 1e-10 * scale {
            return Err(Error::InvalidArgument(format!(
                "operator is not Hermitian (defect {:e})",
                op.hermiticity_defect()
            )));
        }
        let tr = op.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidArgument(format!("trace {tr} differs from 1")));
        }
        let rho = Self {
            op,
            residual: f64::NAN,
        };
        let min = rho.min_eigenvalue()?;
        if min < -SolverOptions::default().psd_tol {
            return Err(Error::NonPhysicalState {
                min_eigenvalue: min,
            });
        }
        Ok(rho)
    }

    /// Projector onto a single basis state.
    pub fn basis_projector(space: FockSpace, index: usize) -> Self {
        let mut op = OperatorMatrix::zeros(space);
        op.set(index, index, C64::new(1.0, 0.0));
        Self {
            op,
            residual: f64::NAN,
        }
    }

    pub fn space(&self) -> FockSpace {
        self.op.space()
    }

    pub fn as_operator(&self) -> &OperatorMatrix {
        &self.op
    }

    /// `‖L[ρ]‖_max` of the accepted solution.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.op.get(row, col)
    }

    pub fn trace(&self) -> f64 {
        self.op.trace().re
    }

    /// Real diagonal, the basis-state populations.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.op.dim()).map(|i| self.op.get(i, i).re).collect()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.op
            .as_mat()
            .self_adjoint_eigenvalues(Side::Lower)
            .map_err(|_| Error::SolverFailure { residual: f64::NAN })
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self
            .eigenvalues()?
            .into_iter()
            .fold(f64::INFINITY, f64::min))
    }
}

/// Solves `L[ρ] = 0, Tr ρ = 1` with default options.
pub fn steady_state(l: &Superoperator) -> Result<DensityMatrix> {
    steady_state_with(l, &SolverOptions::default())
}

/// Builds the generator for `params` on `space` and solves for its steady state.
pub fn solve_params(params: &SystemParams, space: FockSpace) -> Result<DensityMatrix> {
    steady_state(&liouvillian(params, space)?)
}

pub fn steady_state_with(l: &Superoperator, opts: &SolverOptions) -> Result<DensityMatrix> {
    let space = l.space();
    let n = space.dim();
    let size = l.size();
    let trace_rows: Vec<usize> = (0..n).map(|d| d + d * n).collect();

    // Row 0 is the ρ₀₀ equation; it is implied by the others.
    let mut a: Mat<C64> = l.matrix().clone();
    for col in 0..size {
        a[(0, col)] = C64::new(0.0, 0.0);
    }
    for &col in &trace_rows {
        a[(0, col)] = C64::new(1.0, 0.0);
    }

    let lu = DenseLu::new(a);
    let relative_pivot = lu.relative_pivot();
    if !(relative_pivot >= opts.pivot_tol) {
        return Err(Error::DegenerateSteadyState { relative_pivot });
    }

    let mut x = vec![C64::new(0.0, 0.0); size];
    x[0] = C64::new(1.0, 0.0);
    lu.solve_in_place(&mut x);

    for _ in 0..opts.refinement_steps {
        // residual of the bordered system, evaluated with the original generator
        let lx = l.apply_vec(&x);
        let mut r: Vec<C64> = lx.iter().map(|z| -z).collect();
        let tr: C64 = trace_rows.iter().map(|&d| x[d]).sum();
        r[0] = C64::new(1.0, 0.0) - tr;
        if r.iter().all(|z| z.norm() < 1e-15) {
            break;
        }
        lu.solve_in_place(&mut r);
        for (xi, d) in x.iter_mut().zip(r) {
            *xi += d;
        }
    }

    let op = unvectorize(space, &x);
    let herm = (&op + &op.adjoint()).scale(C64::new(0.5, 0.0));
    let tr = herm.trace().re;
    if !(tr.is_finite() && tr > 0.0) {
        return Err(Error::SolverFailure { residual: f64::NAN });
    }
    let op = herm.scale(C64::new(1.0 / tr, 0.0));

    let residual = l
        .apply_vec(&vectorize(&op))
        .into_iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if !(residual <= opts.residual_tol) {
        return Err(Error::SolverFailure { residual });
    }

    let rho = DensityMatrix { op, residual };
    let min_eigenvalue = rho.min_eigenvalue()?;
    if min_eigenvalue < -opts.psd_tol {
        return Err(Error::NonPhysicalState { min_eigenvalue });
    }
    Ok(rho)
}

/// `Tr(ρ O)`.
pub fn expectation(rho: &DensityMatrix, op: &OperatorMatrix) -> Result<C64> {
    Ok(rho.as_operator().checked_mul(op)?.trace())
}

/// `Tr(ρ n)` for the selected mode, read off the populations.
pub fn mean_photon(rho: &DensityMatrix, mode: Mode) -> f64 {
    let space = rho.space();
    space
        .states()
        .zip(rho.populations())
        .map(|(s, p)| p * s.photons(mode) as f64)
        .sum()
}

/// `⟨a†a†aa⟩ / ⟨a†a⟩²` with the default underflow guard.
pub fn g2_zero(rho: &DensityMatrix, mode: Mode) -> Result<f64> {
    g2_zero_with_guard(rho, mode, DEFAULT_PHOTON_GUARD)
}

pub fn g2_zero_with_guard(rho: &DensityMatrix, mode: Mode, guard: f64) -> Result<f64> {
    let space = rho.space();
    let (mut n1, mut n2) = (0.0, 0.0);
    for (s, p) in space.states().zip(rho.populations()) {
        let k = s.photons(mode) as f64;
        n1 += p * k;
        n2 += p * k * (k - 1.0);
    }
    if !(n1 > guard) {
        return Err(Error::UndefinedCorrelation { mean_photon: n1 });
    }
    Ok(n2 / (n1 * n1))
}

/// Result of comparing `g²_CCW(0)` at two consecutive symmetric cutoffs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub base_cutoff: usize,
    pub g2_base: f64,
    pub g2_next: f64,
    pub relative_change: f64,
    pub converged: bool,
}

/// Solves at cutoffs `base` and `base + 1` on both modes and compares
/// `g²_CCW(0)`.
pub fn check_truncation(params: &SystemParams, base_cutoff: usize) -> Result<TruncationReport> {
    if base_cutoff < 2 {
        return Err(Error::InvalidArgument(format!(
            "truncation check needs a base cutoff of at least 2, got {base_cutoff}"
        )));
    }
    let g2_at = |cutoff: usize| -> Result<f64> {
        let rho = solve_params(params, FockSpace::new(cutoff, cutoff)?)?;
        g2_zero(&rho, Mode::Ccw)
    };
    let g2_base = g2_at(base_cutoff)?;
    let g2_next = g2_at(base_cutoff + 1)?;
    let relative_change = ((g2_next - g2_base) / g2_next).abs();
    Ok(TruncationReport {
        base_cutoff,
        g2_base,
        g2_next,
        relative_change,
        converged: relative_change <= TRUNCATION_TOLERANCE,
    })
}

/// `⟨a†a⟩` through an explicit operator product, independent of the
/// population shortcut in [`mean_photon`].
pub fn mean_photon_by_trace(rho: &DensityMatrix, mode: Mode) -> Result<f64> {
    Ok(expectation(rho, &number(rho.space(), mode))?.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilator, BasisState, EmitterState};

    fn baseline() -> SystemParams {
        SystemParams::baseline()
    }

    fn empty_cavity(drive: f64, delta: f64) -> SystemParams {
        SystemParams {
            g_a: 0.0,
            g_b: 0.0,
            drive,
            ..baseline()
        }
        .with_detuning(delta)
    }

    #[test]
    fn undriven_cavity_relaxes_to_vacuum() {
        let space = FockSpace::new(2, 2).unwrap();
        let p = SystemParams {
            drive: 0.0,
            ..baseline().with_j(100.0)
        };
        let rho = solve_params(&p, space).unwrap();
        assert!((rho.get(0, 0).re - 1.0).abs() < 1e-12);
        assert!(rho.as_operator().max_abs() - 1.0 < 1e-12);
        assert!(mean_photon(&rho, Mode::Ccw).abs() < 1e-14);
        assert!(matches!(
            g2_zero(&rho, Mode::Ccw),
            Err(Error::UndefinedCorrelation { .. })
        ));
    }

    #[test]
    fn driven_empty_cavity_amplitude() {
        let space = FockSpace::new(4, 4).unwrap();
        for delta in [-30.0, 0.0, 17.0] {
            let p = empty_cavity(1.0, delta);
            let rho = solve_params(&p, space).unwrap();
            let a = expectation(&rho, &annihilator(space, Mode::Ccw)).unwrap();
            let want = -I * 1.0 / C64::new(0.5 * p.kappa, delta);
            assert!((a - want).norm() < 1e-9 * want.norm(), "{a} vs {want}");
        }
    }

    const I: C64 = C64::new(0.0, 1.0);

    #[test]
    fn driven_empty_cavity_photon_number() {
        let space = FockSpace::new(4, 4).unwrap();
        let rho = solve_params(&empty_cavity(1.0, 0.0), space).unwrap();
        let n = mean_photon(&rho, Mode::Ccw);
        assert!((n - 0.0025).abs() < 1e-10);
        assert!((mean_photon_by_trace(&rho, Mode::Ccw).unwrap() - n).abs() < 1e-15);
    }

    #[test]
    fn coherent_light_is_poissonian() {
        let space = FockSpace::new(4, 4).unwrap();
        for delta in [-40.0, 0.0, 25.0] {
            let rho = solve_params(&empty_cavity(1.0, delta), space).unwrap();
            let g2 = g2_zero(&rho, Mode::Ccw).unwrap();
            assert!((g2 - 1.0).abs() < 1e-3, "g2 = {g2}");
        }
    }

    #[test]
    fn photon_number_of_basis_projectors() {
        let space = FockSpace::new(2, 2).unwrap();
        let vac = DensityMatrix::basis_projector(space, 0);
        assert_eq!(mean_photon(&vac, Mode::Ccw), 0.0);
        let one = space
            .index(BasisState::new(1, 0, EmitterState::Ground))
            .unwrap();
        let rho = DensityMatrix::basis_projector(space, one);
        assert_eq!(mean_photon(&rho, Mode::Ccw), 1.0);
        assert_eq!(mean_photon(&rho, Mode::Cw), 0.0);
        assert_eq!(g2_zero(&rho, Mode::Ccw).unwrap(), 0.0);
    }

    #[test]
    fn guard_is_configurable() {
        let space = FockSpace::new(3, 3).unwrap();
        let rho = solve_params(&empty_cavity(1e-3, 0.0), space).unwrap();
        // ⟨n⟩ ≈ 2.5e-9
        assert!(g2_zero_with_guard(&rho, Mode::Ccw, 1e-30).is_ok());
        assert!(matches!(
            g2_zero_with_guard(&rho, Mode::Ccw, 1e-6),
            Err(Error::UndefinedCorrelation { .. })
        ));
    }

    #[test]
    fn accepted_state_is_physical() {
        let space = FockSpace::new(3, 3).unwrap();
        let p = baseline().with_j(400.0).with_gamma_p(2.0).with_detuning(13.0);
        let rho = solve_params(&p, space).unwrap();
        assert!(rho.residual() <= 1e-10);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert_eq!(rho.as_operator().hermiticity_defect(), 0.0);
        let ev = rho.eigenvalues().unwrap();
        assert!(ev.iter().all(|&e| (-1e-8..=1.0 + 1e-8).contains(&e)));
    }

    #[test]
    fn decoupled_lossless_emitter_is_degenerate() {
        // no emitter decay and no coupling: any emitter population is stationary
        let space = FockSpace::new(2, 2).unwrap();
        let p = SystemParams {
            g_a: 0.0,
            g_b: 0.0,
            gamma_a: 0.0,
            ..baseline()
        };
        assert!(matches!(
            solve_params(&p, space),
            Err(Error::DegenerateSteadyState { .. })
        ));
    }

    #[test]
    fn baseline_antibunching() {
        let rho = solve_params(&baseline(), FockSpace::new(4, 4).unwrap()).unwrap();
        let g2 = g2_zero(&rho, Mode::Ccw).unwrap();
        assert!((g2 - 0.47).abs() < 0.02, "g2 = {g2}");
    }

    #[test]
    fn detuning_symmetry_without_mode_coupling() {
        let space = FockSpace::new(3, 3).unwrap();
        for delta in [20.0, 55.0] {
            let plus = solve_params(&baseline().with_detuning(delta), space).unwrap();
            let minus = solve_params(&baseline().with_detuning(-delta), space).unwrap();
            let (gp, gm) = (
                g2_zero(&plus, Mode::Ccw).unwrap(),
                g2_zero(&minus, Mode::Ccw).unwrap(),
            );
            assert!(((gp - gm) / gp).abs() < 1e-6, "{gp} vs {gm}");
        }
    }

    #[test]
    fn mode_coupling_breaks_detuning_symmetry() {
        // the emitter dresses only the symmetric standing wave, which sits on
        // one side of the drive; reference values from the weak-drive formula
        let space = FockSpace::new(3, 3).unwrap();
        let p = baseline().with_j(400.0);
        let plus = solve_params(&p.with_detuning(20.0), space).unwrap();
        let minus = solve_params(&p.with_detuning(-20.0), space).unwrap();
        let gp = g2_zero(&plus, Mode::Ccw).unwrap();
        let gm = g2_zero(&minus, Mode::Ccw).unwrap();
        assert!((gp - 3.00582).abs() < 0.01 * 3.0, "{gp}");
        assert!((gm - 4.95549).abs() < 0.01 * 4.9, "{gm}");
    }

    #[test]
    fn truncation_report() {
        let report = check_truncation(&baseline(), 3).unwrap();
        assert!(report.converged, "{report:?}");
        let strong = baseline().with_drive(40.0);
        let report = check_truncation(&strong, 3).unwrap();
        assert!(!report.converged, "{report:?}");
        assert!(matches!(
            check_truncation(&baseline().with_drive(0.0), 3),
            Err(Error::UndefinedCorrelation { .. })
        ));
        assert!(check_truncation(&baseline(), 1).is_err());
    }

    #[test]
    fn from_operator_validates() {
        let space = FockSpace::new(1, 1).unwrap();
        let mut op = OperatorMatrix::zeros(space);
        op.set(0, 0, C64::new(0.5, 0.0));
        op.set(1, 1, C64::new(0.5, 0.0));
        assert!(DensityMatrix::from_operator(op.clone()).is_ok());
        op.set(0, 1, C64::new(0.0, 0.1));
        assert!(DensityMatrix::from_operator(op.clone()).is_err());
        op.set(1, 0, C64::new(0.0, -0.1));
        assert!(DensityMatrix::from_operator(op.clone()).is_ok());
        op.set(0, 1, C64::new(0.9, 0.0));
        op.set(1, 0, C64::new(0.9, 0.0));
        assert!(matches!(
            DensityMatrix::from_operator(op),
            Err(Error::NonPhysicalState { .. })
        ));
    }
}
