// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Built-in sweeps regenerating each quantitative figure as a table.
//!
//! All values are absolute, in MHz with `γ_a = 1`, `κ = 40`, `ε = 1` and
//! `g = 20` unless the figure varies them. One-dimensional scans use at
//! least 201 points per axis and heatmaps use 61 × 61. Ranges not fixed by
//! the figure are chosen to cover the plotted window and are described in
//! the `note` metadata entry.

use super::sweep::{Axis, Engine, Output, ParamName, Series, SweepSpec};
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};

const KAPPA: f64 = 40.0;

pub const PRESET_NAMES: [&str; 17] = [
    "fig2", "fig3", "fig4a", "fig4b", "fig7", "fig8a", "fig8b", "fig9a", "fig9b", "fig10a",
    "fig10b", "fig14a", "fig14b", "fig15a", "fig15b", "fig15c", "fig15d",
];

const LINE: usize = 241;
const HEAT: usize = 61;

fn base() -> SystemParams {
    SystemParams::baseline()
}

fn k(x: f64) -> f64 {
    x * KAPPA
}

fn spec(
    name: &str,
    base: SystemParams,
    axes: Vec<Axis>,
    series: Option<(ParamName, Vec<f64>)>,
    outputs: Vec<Output>,
    engine: Engine,
) -> SweepSpec {
    let mut s = SweepSpec::new(base, axes, outputs);
    s.name = name.to_string();
    s.engine = engine;
    s.series = series.map(|(param, values)| Series { param, values });
    s
}

fn detuning_axis(param: ParamName, count: usize) -> Axis {
    Axis::new(param, k(-3.0), k(3.0), count)
}

pub fn figure_preset(name: &str) -> Result<SweepSpec> {
    use Engine::{Analytic, Both, MasterEquation as Me};
    use Output::*;
    use ParamName::*;

    let g_grid = |count| Axis::new(G, 0.0075 * KAPPA, 1.5 * KAPPA, count);
    let mut s = match name {
        "fig2" => spec(
            name,
            base(),
            vec![Axis::new(Delta, k(-10.0), k(10.0), 401)],
            Some((JCoupling, vec![k(6.0), k(0.8)])),
            vec![PT, PR],
            Analytic,
        ),
        "fig3" => spec(
            name,
            base(),
            vec![detuning_axis(DeltaBoth, LINE)],
            Some((JCoupling, vec![0.0, k(30.0)])),
            vec![G2Ccw],
            Both,
        ),
        "fig4a" => spec(
            name,
            base(),
            vec![g_grid(201)],
            Some((JCoupling, vec![0.0, k(10.0), k(20.0), k(40.0)])),
            vec![G2Ccw],
            Me,
        ),
        "fig4b" => spec(
            name,
            base(),
            vec![Axis::new(JCoupling, 0.0, k(40.0), HEAT), g_grid(HEAT)],
            None,
            vec![G2Ccw],
            Me,
        ),
        "fig7" => spec(
            name,
            base(),
            vec![detuning_axis(DeltaBoth, LINE)],
            Some((JCoupling, vec![0.0, k(20.0)])),
            vec![C100Sq, C200Sq, G2Analytic],
            Analytic,
        ),
        "fig8a" | "fig8b" => {
            let j = if name == "fig8a" { 0.0 } else { 800.0 };
            spec(
                name,
                base().with_j(j),
                vec![
                    Axis::new(Kappa, 10.0, 200.0, HEAT),
                    Axis::new(G, 1.0, 100.0, HEAT),
                ],
                None,
                vec![G2Ccw],
                Me,
            )
        }
        "fig9a" => spec(
            name,
            base().with_gamma_p(3.0),
            vec![detuning_axis(DeltaBoth, LINE)],
            Some((JCoupling, vec![0.0, k(10.0)])),
            vec![G2Ccw],
            Me,
        ),
        "fig9b" => spec(
            name,
            base(),
            vec![Axis::new(GammaP, 0.0, 20.0, 201)],
            Some((JCoupling, vec![0.0, k(6.0), k(10.0), k(20.0)])),
            vec![G2Ccw],
            Me,
        ),
        "fig10a" => spec(
            name,
            base(),
            vec![
                detuning_axis(DeltaBoth, HEAT),
                Axis::new(GammaP, 0.0, 20.0, HEAT),
            ],
            Some((JCoupling, vec![0.0, k(20.0)])),
            vec![G2Ccw],
            Me,
        ),
        "fig10b" => spec(
            name,
            base(),
            vec![
                Axis::new(JCoupling, 0.0, k(20.0), HEAT),
                Axis::new(GammaP, 0.0, 20.0, HEAT),
            ],
            None,
            vec![G2Ccw],
            Me,
        ),
        "fig14a" | "fig14b" => {
            let j = if name == "fig14a" { 0.0 } else { k(20.0) };
            spec(
                name,
                base().with_j(j).with_g(0.5 * KAPPA),
                vec![detuning_axis(Delta, HEAT), detuning_axis(DeltaA, HEAT)],
                None,
                vec![G2Ccw],
                Me,
            )
        }
        "fig15a" | "fig15b" => {
            let j = if name == "fig15a" { 0.0 } else { k(20.0) };
            spec(
                name,
                base().with_j(j).with_g(0.5 * KAPPA),
                vec![
                    detuning_axis(DeltaBoth, HEAT),
                    Axis::new(GB, 0.0, k(2.0), HEAT),
                ],
                None,
                vec![G2Ccw],
                Me,
            )
        }
        "fig15c" | "fig15d" => {
            let j = if name == "fig15c" { 0.0 } else { k(20.0) };
            spec(
                name,
                base().with_j(j),
                vec![
                    Axis::new(GA, 0.0, k(2.0), HEAT),
                    Axis::new(GB, 0.0, k(2.0), HEAT),
                ],
                None,
                vec![G2Ccw],
                Me,
            )
        }
        other => return Err(Error::UnknownPreset(other.to_string())),
    };
    s.log10 = matches!(name, "fig4a" | "fig4b" | "fig8a" | "fig8b");
    s.note = "frequencies in MHz with gamma_a = 1; ranges not fixed by the figure cover its plotted window".into();
    Ok(s)
}
