// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Shared inputs for the benchmarks.

use blockade_core::SystemParams;

pub const KAPPA: f64 = 40.0;

/// `κ = 40`, `g = 20`, `ε = 1`, `γ_a = 1`, on resonance, no mode coupling.
pub fn baseline_point() -> SystemParams {
    SystemParams::baseline()
}

/// Strong mode coupling `J = 30κ` with emitter dephasing.
pub fn mode_coupled_point() -> SystemParams {
    SystemParams::baseline()
        .with_j(30.0 * KAPPA)
        .with_gamma_p(3.0)
}

/// `count` detunings spread evenly over `[-3κ, 3κ]`.
pub fn detuning_grid(count: usize) -> Vec<f64> {
    let step = 6.0 * KAPPA / (count - 1) as f64;
    (0..count).map(|i| -3.0 * KAPPA + step * i as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        baseline_point().validate().unwrap();
        mode_coupled_point().validate().unwrap();
        let g = detuning_grid(241);
        assert_eq!(g.len(), 241);
        assert_eq!(g[120], 0.0);
        assert!((g[240] - 3.0 * KAPPA).abs() < 1e-12);
    }
}
