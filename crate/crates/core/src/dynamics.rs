// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Rotating-frame Hamiltonian, the non-Hermitian weak-drive Hamiltonian and
//! the Lindblad generator.
//!
//! All frequencies share one unit (MHz in the presets, with `γ_a = 1`).
//! The emitter energy enters as `Δ_a |+⟩⟨+|`. Density matrices are
//! vectorized by stacking columns, so `ρ[i, j]` sits at `i + j * dim` and
//! `vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ)`.

use faer::Mat;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{
    annihilator, emitter_excitation_projector, emitter_lowering, number, pauli_z, FockSpace, Mode,
    OperatorMatrix,
};

const I: C64 = C64::new(0.0, 1.0);

/// Model rates and detunings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    /// Cavity detuning from the drive, `Δ = ω − ω_d`.
    pub delta: f64,
    /// Emitter detuning from the drive, `Δ_a = ω_a − ω_d`.
    pub delta_a: f64,
    /// Scatterer-induced CCW/CW coupling `J`.
    pub j_coupling: f64,
    pub g_a: f64,
    pub g_b: f64,
    /// Drive amplitude `ε` on the CCW mode.
    pub drive: f64,
    /// Total cavity decay `κ = κ_i + κ_e`.
    pub kappa: f64,
    /// Spontaneous emission rate.
    pub gamma_a: f64,
    /// Pure dephasing rate.
    pub gamma_p: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self::baseline()
    }
}

impl SystemParams {
    /// κ = 40, g = 20, ε = 1, γ_a = 1 (units of γ_a), everything else zero.
    pub fn baseline() -> Self {
        Self {
            delta: 0.0,
            delta_a: 0.0,
            j_coupling: 0.0,
            g_a: 20.0,
            g_b: 20.0,
            drive: 1.0,
            kappa: 40.0,
            gamma_a: 1.0,
            gamma_p: 0.0,
        }
    }

    /// Sets a common emitter coupling for both modes.
    pub fn with_g(mut self, g: f64) -> Self {
        self.g_a = g;
        self.g_b = g;
        self
    }

    /// Sets `Δ = Δ_a = delta` (emitter resonant with the cavity).
    pub fn with_detuning(mut self, delta: f64) -> Self {
        self.delta = delta;
        self.delta_a = delta;
        self
    }

    pub fn with_j(mut self, j: f64) -> Self {
        self.j_coupling = j;
        self
    }

    pub fn with_drive(mut self, drive: f64) -> Self {
        self.drive = drive;
        self
    }

    pub fn with_gamma_p(mut self, gamma_p: f64) -> Self {
        self.gamma_p = gamma_p;
        self
    }

    /// Total emitter linewidth `γ = γ_a + 2γ_p`.
    pub fn gamma(&self) -> f64 {
        self.gamma_a + 2.0 * self.gamma_p
    }

    pub fn has_equal_couplings(&self) -> bool {
        self.g_a == self.g_b
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("delta", self.delta),
            ("delta_a", self.delta_a),
            ("j_coupling", self.j_coupling),
            ("g_a", self.g_a),
            ("g_b", self.g_b),
            ("drive", self.drive),
            ("kappa", self.kappa),
            ("gamma_a", self.gamma_a),
            ("gamma_p", self.gamma_p),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        if self.kappa <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "kappa must be positive, got {}",
                self.kappa
            )));
        }
        for (name, v) in &fields[2..] {
            if *v < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// The coherent part `X = g_a a†σ₋ + g_b b†σ₋ + ε a†`, whose Hermitian
/// completion `X + X†` appears in both Hamiltonians.
fn drive_and_coupling(params: &SystemParams, space: FockSpace) -> OperatorMatrix {
    let a = annihilator(space, Mode::Ccw);
    let b = annihilator(space, Mode::Cw);
    let sm = emitter_lowering(space);
    let ad = a.adjoint();
    let bd = b.adjoint();
    let x = &(&(&ad * &sm).scale(C64::from(params.g_a))
        + &(&bd * &sm).scale(C64::from(params.g_b)))
        + &ad.scale(C64::from(params.drive));
    let hop = (&ad * &b).scale(C64::from(params.j_coupling));
    &(&x + &x.adjoint()) + &(&hop + &hop.adjoint())
}

/// `H/ħ = Δ(a†a + b†b) + Δ_a |+⟩⟨+| + J(a†b + b†a) + [g_a a†σ₋ + g_b b†σ₋ + ε a† + h.c.]`
pub fn hamiltonian_eff(params: &SystemParams, space: FockSpace) -> Result<OperatorMatrix> {
    params.validate()?;
    let photons = &number(space, Mode::Ccw) + &number(space, Mode::Cw);
    let diag = &photons.scale(C64::from(params.delta))
        + &emitter_excitation_projector(space).scale(C64::from(params.delta_a));
    Ok(&diag + &drive_and_coupling(params, space))
}

/// `H̃/ħ = (Δ − iκ/2)(a†a + b†b) + (Δ_a − iγ_a/2)|+⟩⟨+| + J(a†b + b†a) + [… + h.c.]`
///
/// Pure dephasing has no place in this Hamiltonian and is ignored.
pub fn nonhermitian_hamiltonian(params: &SystemParams, space: FockSpace) -> Result<OperatorMatrix> {
    params.validate()?;
    let photons = &number(space, Mode::Ccw) + &number(space, Mode::Cw);
    let diag = &photons.scale(C64::new(params.delta, -0.5 * params.kappa))
        + &emitter_excitation_projector(space)
            .scale(C64::new(params.delta_a, -0.5 * params.gamma_a));
    Ok(&diag + &drive_and_coupling(params, space))
}

/// Linear map on vectorized density matrices of one [`FockSpace`].
#[derive(Clone, Debug)]
pub struct Superoperator {
    space: FockSpace,
    matrix: Mat<C64>,
}

impl Superoperator {
    pub fn space(&self) -> FockSpace {
        self.space
    }

    /// Side length of the matrix, `dim²`.
    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Mat<C64> {
        &self.matrix
    }

    pub fn apply(&self, rho: &OperatorMatrix) -> Result<OperatorMatrix> {
        if rho.space() != self.space {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                found: rho.dim(),
            });
        }
        let out = self.apply_vec(&vectorize(rho));
        Ok(unvectorize(self.space, &out))
    }

    pub(crate) fn apply_vec(&self, x: &[C64]) -> Vec<C64> {
        let m = &self.matrix;
        let size = self.size();
        let mut out = vec![C64::new(0.0, 0.0); size];
        // column-major storage: accumulate column by column
        for (col, &xc) in x.iter().enumerate() {
            if xc.re == 0.0 && xc.im == 0.0 {
                continue;
            }
            let column = m.col(col);
            for (row, o) in out.iter_mut().enumerate() {
                *o += column[row] * xc;
            }
        }
        out
    }

    /// Largest `|Tr L[E_kl]|` over matrix units `E_kl`; zero for a
    /// trace-preserving generator.
    pub fn trace_defect(&self) -> f64 {
        let n = self.space.dim();
        (0..self.size())
            .map(|col| {
                (0..n)
                    .map(|d| self.matrix[(d + d * n, col)])
                    .sum::<C64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Column-stacking vectorization.
pub fn vectorize(op: &OperatorMatrix) -> Vec<C64> {
    let n = op.dim();
    let mut v = Vec::with_capacity(n * n);
    for col in 0..n {
        for row in 0..n {
            v.push(op.get(row, col));
        }
    }
    v
}

/// Inverse of [`vectorize`]. Panics if `v.len() != dim²`.
pub fn unvectorize(space: FockSpace, v: &[C64]) -> OperatorMatrix {
    let n = space.dim();
    assert_eq!(v.len(), n * n, "vector length does not match the space");
    OperatorMatrix::from_fn(space, |row, col| v[row + col * n])
}

type Triplets = Vec<(usize, usize, C64)>;

fn identity_triplets(n: usize) -> Triplets {
    (0..n).map(|i| (i, i, C64::new(1.0, 0.0))).collect()
}

/// Adds `coef · (Bᵀ ⊗ A)`, i.e. the map `ρ ↦ coef · A ρ B`.
fn add_sandwich(target: &mut Mat<C64>, n: usize, left: &Triplets, right: &Triplets, coef: C64) {
    for &(i, k, a) in left {
        for &(l, j, b) in right {
            target[(i + j * n, k + l * n)] += coef * a * b;
        }
    }
}

/// Adds `rate · (c ρ c† − ½{c†c, ρ})`.
fn add_dissipator(target: &mut Mat<C64>, n: usize, c: &OperatorMatrix, rate: f64) {
    if rate == 0.0 {
        return;
    }
    let id = identity_triplets(n);
    let cd = c.adjoint();
    let cdc = (&cd * c).nonzeros();
    add_sandwich(target, n, &c.nonzeros(), &cd.nonzeros(), C64::from(rate));
    add_sandwich(target, n, &cdc, &id, C64::from(-0.5 * rate));
    add_sandwich(target, n, &id, &cdc, C64::from(-0.5 * rate));
}

/// Lindblad generator
///
/// ```text
/// L[ρ] = −i[H, ρ] + κ D[a]ρ + κ D[b]ρ + γ_a D[σ₋]ρ + γ_p D[σ_z]ρ,
/// D[c]ρ = c ρ c† − ½{c†c, ρ}
/// ```
///
/// with `σ_z` the Pauli matrix, so the dephasing term is
/// `γ_p (σ_z ρ σ_z − ρ)`.
pub fn liouvillian(params: &SystemParams, space: FockSpace) -> Result<Superoperator> {
    let h = hamiltonian_eff(params, space)?;
    let n = space.dim();
    let mut matrix = Mat::<C64>::zeros(n * n, n * n);
    let id = identity_triplets(n);
    let h_nz = h.nonzeros();
    add_sandwich(&mut matrix, n, &h_nz, &id, -I);
    add_sandwich(&mut matrix, n, &id, &h_nz, I);

    add_dissipator(&mut matrix, n, &annihilator(space, Mode::Ccw), params.kappa);
    add_dissipator(&mut matrix, n, &annihilator(space, Mode::Cw), params.kappa);
    add_dissipator(&mut matrix, n, &emitter_lowering(space), params.gamma_a);
    add_dissipator(&mut matrix, n, &pauli_z(space), params.gamma_p);

    Ok(Superoperator { space, matrix })
}
