// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Mean-field transmission and reflection of the bare coupled-mode cavity,
//! and the scatterer-induced coupling strength.
//!
//! The emitter is dropped (`g = 0`), so the amplitudes obey the linear
//! equations
//!
//! ```text
//! 0 = −(iΔ + κ/2)⟨a⟩ − iJ⟨b⟩ − iε
//! 0 = −(iΔ + κ/2)⟨b⟩ − iJ⟨a⟩
//! ```
//!
//! and the output fields are `⟨a_out⟩ = iε/√κ + √κ⟨a⟩`, `⟨b_out⟩ = √κ⟨b⟩`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::dynamics::SystemParams;
use crate::error::{Error, Result};

const I: C64 = C64::new(0.0, 1.0);

/// Stationary `(⟨a⟩, ⟨b⟩)`:
/// `⟨a⟩ = ε(Δ − iκ/2)/D`, `⟨b⟩ = −εJ/D`, `D = (iΔ + κ/2)² + J²`.
/// Emitter couplings are ignored.
pub fn mean_fields(params: &SystemParams) -> Result<(C64, C64)> {
    params.validate()?;
    let s = C64::new(0.5 * params.kappa, params.delta);
    let j = params.j_coupling;
    let d = s * s + j * j;
    let e = params.drive;
    Ok((
        C64::new(params.delta, -0.5 * params.kappa) * e / d,
        -C64::from(e * j) / d,
    ))
}

/// One detuning of a transmission/reflection scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    pub delta: f64,
    /// `|⟨a_out⟩|²` in units of the input power `ε²/κ`.
    pub p_t: f64,
    /// `|⟨b_out⟩|²` in units of the input power `ε²/κ`.
    pub p_r: f64,
    pub a_mean: C64,
    pub b_mean: C64,
}

impl SpectrumPoint {
    fn new(delta: f64, a_mean: C64, b_mean: C64, params: &SystemParams) -> Self {
        let (kappa, e) = (params.kappa, params.drive);
        Self {
            delta,
            p_t: (I + a_mean * kappa / e).norm_sqr(),
            p_r: (b_mean * kappa / e).norm_sqr(),
            a_mean,
            b_mean,
        }
    }
}

/// Evaluates the spectrum on `delta_grid` (same unit as `params`). Only the
/// cavity detuning is swept; `g` is ignored. Rates are scaled by `κ` so the
/// far-detuned transmission is exactly 1.
pub fn spectrum(params: &SystemParams, delta_grid: &[f64]) -> Result<Vec<SpectrumPoint>> {
    params.validate()?;
    if delta_grid.is_empty() {
        return Err(Error::InvalidArgument("empty detuning grid".into()));
    }
    if params.drive == 0.0 {
        return Err(Error::InvalidArgument(
            "spectra are normalized to the drive, which is zero".into(),
        ));
    }
    if let Some(bad) = delta_grid.iter().find(|d| !d.is_finite()) {
        return Err(Error::InvalidArgument(format!("non-finite detuning {bad}")));
    }
    delta_grid
        .iter()
        .map(|&delta| {
            let p = SystemParams { delta, ..*params };
            let (a, b) = mean_fields(&p)?;
            Ok(SpectrumPoint::new(delta, a, b, &p))
        })
        .collect()
}

/// Sub-wavelength dielectric sphere in the cavity near field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScattererSpec {
    pub radius: f64,
    pub refractive_index: f64,
    pub mode_volume: f64,
    /// Cavity mode function at the particle position.
    pub mode_function: f64,
    pub omega: f64,
}

impl ScattererSpec {
    pub fn validate(&self) -> Result<()> {
        let all_finite = [
            self.radius,
            self.refractive_index,
            self.mode_volume,
            self.mode_function,
            self.omega,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams(
                "scatterer has non-finite fields".into(),
            ));
        }
        if self.radius <= 0.0 || self.refractive_index <= 0.0 || self.mode_volume <= 0.0 {
            return Err(Error::InvalidParams(
                "scatterer radius, index and mode volume must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Clausius–Mossotti polarizability `4πR³ (n² − 1)/(n² + 2)`.
    pub fn polarizability(&self) -> f64 {
        let n2 = self.refractive_index * self.refractive_index;
        4.0 * PI * self.radius.powi(3) * (n2 - 1.0) / (n2 + 2.0)
    }
}

/// `|J| = α f² ω / 2V`. The signed coupling is negative for `n > 1`; only
/// its magnitude sets the splitting.
pub fn scatterer_coupling(spec: &ScattererSpec) -> Result<f64> {
    spec.validate()?;
    Ok(
        (spec.polarizability() * spec.mode_function.powi(2) * spec.omega
            / (2.0 * spec.mode_volume))
            .abs(),
    )
}
