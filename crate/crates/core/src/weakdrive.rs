// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Weak-drive amplitudes of the pure-state ansatz
//!
//! ```text
//! |ψ⟩ = |0,0,−⟩ + Σ C_{i,j,±} |i,j,±⟩      (at most two excitations)
//! ```
//!
//! In the weak-drive limit the stationary Schrödinger equation with the
//! non-Hermitian Hamiltonian closes on the one- and two-excitation
//! manifolds. The one-excitation amplitudes follow from the drive acting on
//! the vacuum, and the two-excitation amplitudes follow from the drive acting
//! on the one-excitation manifold. Feedback from higher manifolds is dropped.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use faer::Mat;

use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::lu::DenseLu;

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Relative size below which a denominator is treated as vanishing.
const SINGULAR_TOL: f64 = 1e-13;

/// `Δ_p = Δ − iκ/2` and `Δ_d = Δ_a − iγ_a/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexDetunings {
    pub delta_p: C64,
    pub delta_d: C64,
}

impl ComplexDetunings {
    pub fn new(params: &SystemParams) -> Self {
        Self {
            delta_p: C64::new(params.delta, -0.5 * params.kappa),
            delta_d: C64::new(params.delta_a, -0.5 * params.gamma_a),
        }
    }
}

/// Amplitudes relative to `C_{0,0,−} = 1`. Suffix `m`/`p` is the emitter
/// state `−`/`+`; digits are the CCW and CW photon numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeSet {
    pub c_100m: C64,
    pub c_010m: C64,
    pub c_000p: C64,
    pub c_200m: C64,
    pub c_020m: C64,
    pub c_110m: C64,
    pub c_100p: C64,
    pub c_010p: C64,
}

/// Outcome of the soft ordering check on an [`AmplitudeSet`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HierarchyCheck {
    /// Largest one-excitation amplitude in units of `ε/κ`.
    pub one_excitation_scaled: f64,
    /// Largest two-excitation amplitude over the square of the largest
    /// one-excitation amplitude.
    pub two_over_one_squared: f64,
    pub ok: bool,
}

impl AmplitudeSet {
    fn from_slice(x: &[C64]) -> Self {
        Self {
            c_100m: x[0],
            c_010m: x[1],
            c_000p: x[2],
            c_200m: x[3],
            c_020m: x[4],
            c_110m: x[5],
            c_100p: x[6],
            c_010p: x[7],
        }
    }

    pub fn as_array(&self) -> [C64; 8] {
        [
            self.c_100m,
            self.c_010m,
            self.c_000p,
            self.c_200m,
            self.c_020m,
            self.c_110m,
            self.c_100p,
            self.c_010p,
        ]
    }

    pub fn one_excitation(&self) -> [C64; 3] {
        [self.c_100m, self.c_010m, self.c_000p]
    }

    pub fn two_excitation(&self) -> [C64; 5] {
        [
            self.c_200m,
            self.c_020m,
            self.c_110m,
            self.c_100p,
            self.c_010p,
        ]
    }

    /// Leading-order `⟨a†a⟩ ≈ |C_{1,0,−}|²`.
    pub fn n_ccw(&self) -> f64 {
        self.c_100m.norm_sqr()
    }

    pub fn n_cw(&self) -> f64 {
        self.c_010m.norm_sqr()
    }

    /// `2|C_{2,0,−}|² / |C_{1,0,−}|⁴`.
    pub fn g2_ccw(&self) -> Result<f64> {
        g2_from(self.c_100m, self.c_200m)
    }

    pub fn g2_cw(&self) -> Result<f64> {
        g2_from(self.c_010m, self.c_020m)
    }

    /// Soft check that `|C⁽¹⁾| ≤ 10 ε/κ` and `|C⁽²⁾| ≤ 100 |C⁽¹⁾|²`.
    /// Violations indicate the drive is too strong for the ansatz; they are
    /// reported, not raised.
    pub fn hierarchy(&self, params: &SystemParams) -> HierarchyCheck {
        let max_norm = |v: &[C64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let one = max_norm(&self.one_excitation());
        let two = max_norm(&self.two_excitation());
        let one_excitation_scaled = one * params.kappa / params.drive;
        let two_over_one_squared = if one > 0.0 { two / (one * one) } else { 0.0 };
        HierarchyCheck {
            one_excitation_scaled,
            two_over_one_squared,
            ok: one_excitation_scaled <= 10.0 && two_over_one_squared <= 100.0 && one < 1.0,
        }
    }
}

fn g2_from(c1: C64, c2: C64) -> Result<f64> {
    let n = c1.norm_sqr();
    if !(n > 0.0) {
        return Err(Error::UndefinedCorrelation { mean_photon: n });
    }
    Ok(2.0 * c2.norm_sqr() / (n * n))
}

fn point_label(params: &SystemParams) -> String {
    format!(
        "delta={}, delta_a={}, j={}, g_a={}, g_b={}, kappa={}, gamma_a={}",
        params.delta,
        params.delta_a,
        params.j_coupling,
        params.g_a,
        params.g_b,
        params.kappa,
        params.gamma_a
    )
}

fn require_no_dephasing(params: &SystemParams) -> Result<()> {
    if params.gamma_p != 0.0 {
        return Err(Error::InvalidParams(format!(
            "weak-drive amplitudes neglect pure dephasing; got gamma_p = {}",
            params.gamma_p
        )));
    }
    Ok(())
}

fn require_common_coupling(params: &SystemParams) -> Result<()> {
    if !params.has_equal_couplings() {
        return Err(Error::InvalidParams(format!(
            "closed forms assume g_a = g_b; got {} and {}",
            params.g_a, params.g_b
        )));
    }
    Ok(())
}

/// Coefficient matrix and right-hand side of the weak-drive system in the
/// unknown order of [`AmplitudeSet::as_array`].
fn weak_drive_system(params: &SystemParams) -> (Mat<C64>, [C64; 8]) {
    let ComplexDetunings {
        delta_p: dp,
        delta_d: dd,
    } = ComplexDetunings::new(params);
    let j = C64::from(params.j_coupling);
    let (ga, gb) = (C64::from(params.g_a), C64::from(params.g_b));
    let e = C64::from(params.drive);
    let s2 = C64::from(SQRT2);
    let two_photon = dp * 2.0;
    let photon_emitter = dp + dd;
    let z = C64::new(0.0, 0.0);

    #[rustfmt::skip]
    let rows: [[C64; 8]; 8] = [
        // c_100m       c_010m  c_000p  c_200m      c_020m      c_110m      c_100p          c_010p
        [dp,            j,      ga,     z,          z,          z,          z,              z],
        [j,             dp,     gb,     z,          z,          z,          z,              z],
        [ga,            gb,     dd,     z,          z,          z,          z,              z],
        [s2 * e,        z,      z,      two_photon, z,          s2 * j,     s2 * ga,        z],
        [z,             z,      z,      z,          two_photon, s2 * j,     z,              s2 * gb],
        [z,             e,      z,      s2 * j,     s2 * j,     two_photon, gb,             ga],
        [z,             z,      e,      s2 * ga,    z,          gb,         photon_emitter, j],
        [z,             z,      z,      z,          s2 * gb,    ga,         j,              photon_emitter],
    ];
    let m = Mat::from_fn(8, 8, |r, c| rows[r][c]);
    let mut rhs = [z; 8];
    rhs[0] = -e;
    (m, rhs)
}

/// Solves the eight coupled amplitude equations with `C_{0,0,−} = 1`.
/// Mode-specific couplings enter term by term: every `a†σ₋` vertex carries
/// `g_a` and every `b†σ₋` vertex carries `g_b`.
pub fn solve_weak_drive(params: &SystemParams) -> Result<AmplitudeSet> {
    params.validate()?;
    require_no_dephasing(params)?;
    let (m, rhs) = weak_drive_system(params);
    let lu = DenseLu::new(m.clone());
    let singular = || Error::AnalyticSingularity {
        point: point_label(params),
    };
    if !(lu.relative_pivot() > SINGULAR_TOL) {
        return Err(singular());
    }
    let mut x = rhs;
    lu.solve_in_place(&mut x);

    let residual = |x: &[C64; 8]| -> [C64; 8] {
        let mut r = rhs;
        for (i, ri) in r.iter_mut().enumerate() {
            for (k, xk) in x.iter().enumerate() {
                *ri -= m[(i, k)] * xk;
            }
        }
        r
    };
    let mut r = residual(&x);
    lu.solve_in_place(&mut r);
    for (xi, d) in x.iter_mut().zip(r) {
        *xi += d;
    }

    // relative to the size of the terms that cancel in each row
    let r = residual(&x);
    let mut worst = 0.0f64;
    for (i, ri) in r.iter().enumerate() {
        let scale = rhs[i].norm() + (0..8).map(|k| (m[(i, k)] * x[k]).norm()).sum::<f64>();
        if scale > 0.0 {
            worst = worst.max(ri.norm() / scale);
        }
    }
    if !x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) || worst > 1e-12 {
        return Err(singular());
    }
    Ok(AmplitudeSet::from_slice(&x))
}

fn check_denominator(value: C64, terms: &[C64], params: &SystemParams) -> Result<()> {
    let scale: f64 = terms.iter().map(|t| t.norm()).sum();
    if !(value.norm() > SINGULAR_TOL * scale) {
        return Err(Error::AnalyticSingularity {
            point: point_label(params),
        });
    }
    Ok(())
}

/// `(C_{1,0,−}, C_{2,0,−})` from the explicit rational expressions for a
/// common coupling `g`:
///
/// ```text
/// C_{1,0,−} = ε (Δ_pΔ_d − g²) / [(J − Δ_p) C₁]
/// C_{2,0,−} = √2 ε² L / C₃
/// C₁ = −2g² + JΔ_d + Δ_pΔ_d
/// C₂ = (J + Δ_p)² + Δ_d(J + Δ_p) − 2g²
/// C₃ = 2 (J − Δ_p)² C₁ C₂
/// L  = Δ_p³Δ_d + Δ_p²Δ_d² + JΔ_p²Δ_d − 2Δ_pΔ_d g² − 2JΔ_p g² + g⁴
/// ```
pub fn c_amplitudes_closed_form(params: &SystemParams) -> Result<(C64, C64)> {
    params.validate()?;
    require_common_coupling(params)?;
    require_no_dephasing(params)?;
    let ComplexDetunings {
        delta_p: dp,
        delta_d: dd,
    } = ComplexDetunings::new(params);
    let j = C64::from(params.j_coupling);
    let g2 = C64::from(params.g_a * params.g_a);
    let e = params.drive;

    let c1 = -g2 * 2.0 + j * dd + dp * dd;
    check_denominator(c1, &[g2 * 2.0, j * dd, dp * dd], params)?;
    let jp = j + dp;
    let c2 = jp * jp + dd * jp - g2 * 2.0;
    check_denominator(c2, &[jp * jp, dd * jp, g2 * 2.0], params)?;
    let jm = j - dp;
    check_denominator(jm, &[j, dp], params)?;
    let c3 = jm * jm * c1 * c2 * 2.0;
    let l = dp * dp * dp * dd + dp * dp * dd * dd + j * dp * dp * dd
        - dp * dd * g2 * 2.0
        - j * dp * g2 * 2.0
        + g2 * g2;

    let c100 = (dp * dd - g2) * e / (jm * c1);
    let c200 = l * (SQRT2 * e * e) / c3;
    Ok((c100, c200))
}

/// Drive-independent weak-drive `g²_CCW(0) = |A₁|²|A₂|² / (|A₃|²|A₄|⁴)` with
///
/// ```text
/// A₁ = Δ_p[Δ_p²Δ_d + (Δ_dΔ_p − 2g²)(Δ_d + J)] + g⁴
/// A₂ = Δ_d(J + Δ_p) − 2g²
/// A₃ = (J + Δ_p)(J + Δ_p + Δ_d) − 2g²
/// A₄ = Δ_pΔ_d − g²
/// ```
pub fn g2_closed_form(params: &SystemParams) -> Result<f64> {
    params.validate()?;
    require_common_coupling(params)?;
    require_no_dephasing(params)?;
    let ComplexDetunings {
        delta_p: dp,
        delta_d: dd,
    } = ComplexDetunings::new(params);
    let j = C64::from(params.j_coupling);
    let g2 = C64::from(params.g_a * params.g_a);

    let a1 = dp * (dp * dp * dd + (dd * dp - g2 * 2.0) * (dd + j)) + g2 * g2;
    let a2 = dd * (j + dp) - g2 * 2.0;
    let a3 = (j + dp) * (j + dp + dd) - g2 * 2.0;
    let a4 = dp * dd - g2;
    check_denominator(a3, &[(j + dp) * (j + dp + dd), g2 * 2.0], params)?;
    check_denominator(a4, &[dp * dd, g2], params)?;
    Ok(a1.norm_sqr() * a2.norm_sqr() / (a3.norm_sqr() * a4.norm_sqr() * a4.norm_sqr()))
}

/// Large-`J` estimates at `Δ ≈ 0` of how mode coupling suppresses the
/// amplitudes relative to `J = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRatios {
    /// `|C_{1,0,−}(J)|² / |C_{1,0,−}(0)|² ≈ κ² / 4J²`.
    pub r1: f64,
    /// `|C_{2,0,−}(J)|² / |C_{2,0,−}(0)|² ≈ κ⁶ / 4J⁶`.
    pub r2: f64,
    /// `R₂ / R₁² = 4κ² / J²`, the predicted `g²(J) / g²(0)`.
    pub ratio: f64,
}

pub fn g2_ratio_asymptotic(params: &SystemParams) -> Result<AsymptoticRatios> {
    params.validate()?;
    if params.j_coupling == 0.0 {
        return Err(Error::AnalyticSingularity {
            point: "j_coupling = 0 in the large-J ratio".into(),
        });
    }
    let x = params.kappa / params.j_coupling;
    let r1 = x * x / 4.0;
    let r2 = x.powi(6) / 4.0;
    Ok(AsymptoticRatios {
        r1,
        r2,
        ratio: r2 / (r1 * r1),
    })
}
