// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::table::ResultTable;
use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::fock::{FockSpace, Mode};
use crate::meanfield::spectrum;
use crate::steadystate::{g2_zero, mean_photon, solve_params, DensityMatrix};
use crate::weakdrive::{solve_weak_drive, AmplitudeSet};

/// Parameters a sweep may vary. `DeltaBoth` moves cavity and emitter
/// detunings together; `G` sets a common coupling for both modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamName {
    Delta,
    DeltaA,
    DeltaBoth,
    JCoupling,
    G,
    GA,
    GB,
    Drive,
    Kappa,
    GammaA,
    GammaP,
}

impl ParamName {
    pub const ALL: [ParamName; 11] = [
        ParamName::Delta,
        ParamName::DeltaA,
        ParamName::DeltaBoth,
        ParamName::JCoupling,
        ParamName::G,
        ParamName::GA,
        ParamName::GB,
        ParamName::Drive,
        ParamName::Kappa,
        ParamName::GammaA,
        ParamName::GammaP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ParamName::Delta => "delta",
            ParamName::DeltaA => "delta_a",
            ParamName::DeltaBoth => "delta_both",
            ParamName::JCoupling => "j_coupling",
            ParamName::G => "g",
            ParamName::GA => "g_a",
            ParamName::GB => "g_b",
            ParamName::Drive => "drive",
            ParamName::Kappa => "kappa",
            ParamName::GammaA => "gamma_a",
            ParamName::GammaP => "gamma_p",
        }
    }

    pub fn apply(self, params: &mut SystemParams, value: f64) {
        match self {
            ParamName::Delta => params.delta = value,
            ParamName::DeltaA => params.delta_a = value,
            ParamName::DeltaBoth => {
                params.delta = value;
                params.delta_a = value;
            }
            ParamName::JCoupling => params.j_coupling = value,
            ParamName::G => {
                params.g_a = value;
                params.g_b = value;
            }
            ParamName::GA => params.g_a = value,
            ParamName::GB => params.g_b = value,
            ParamName::Drive => params.drive = value,
            ParamName::Kappa => params.kappa = value,
            ParamName::GammaA => params.gamma_a = value,
            ParamName::GammaP => params.gamma_p = value,
        }
    }

    /// Parameters written by [`apply`](Self::apply), used to reject axes
    /// that overlap.
    fn fields(self) -> &'static [&'static str] {
        match self {
            ParamName::DeltaBoth => &["delta", "delta_a"],
            ParamName::G => &["g_a", "g_b"],
            ParamName::Delta => &["delta"],
            ParamName::DeltaA => &["delta_a"],
            ParamName::JCoupling => &["j_coupling"],
            ParamName::GA => &["g_a"],
            ParamName::GB => &["g_b"],
            ParamName::Drive => &["drive"],
            ParamName::Kappa => &["kappa"],
            ParamName::GammaA => &["gamma_a"],
            ParamName::GammaP => &["gamma_p"],
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ParamName::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown parameter '{s}'")))
    }
}

/// Observable columns a sweep can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Output {
    G2Ccw,
    G2Cw,
    NCcw,
    NCw,
    PT,
    PR,
    /// Weak-drive `g²_CCW(0)` from the amplitude equations.
    G2Analytic,
    /// `|C_{1,0,−}|²` from the amplitude equations.
    C100Sq,
    /// `|C_{2,0,−}|²` from the amplitude equations.
    C200Sq,
}

impl Output {
    pub const ALL: [Output; 9] = [
        Output::G2Ccw,
        Output::G2Cw,
        Output::NCcw,
        Output::NCw,
        Output::PT,
        Output::PR,
        Output::G2Analytic,
        Output::C100Sq,
        Output::C200Sq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Output::G2Ccw => "g2_ccw",
            Output::G2Cw => "g2_cw",
            Output::NCcw => "n_ccw",
            Output::NCw => "n_cw",
            Output::PT => "p_t",
            Output::PR => "p_r",
            Output::G2Analytic => "g2_analytic",
            Output::C100Sq => "c100_sq",
            Output::C200Sq => "c200_sq",
        }
    }

    fn is_correlation(self) -> bool {
        matches!(self, Output::G2Ccw | Output::G2Cw | Output::G2Analytic)
    }

    /// Produced by the engine selected for the run rather than by a fixed
    /// route.
    fn follows_engine(self) -> bool {
        matches!(
            self,
            Output::G2Ccw | Output::G2Cw | Output::NCcw | Output::NCw
        )
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Output {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Output::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown output '{s}'")))
    }
}

/// Route for the photon-statistics columns. `Both` takes them from the
/// master equation and adds the weak-drive `g2_analytic` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    #[default]
    MasterEquation,
    Analytic,
    Both,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::MasterEquation => "master_equation",
            Engine::Analytic => "analytic",
            Engine::Both => "both",
        }
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Engine::MasterEquation, Engine::Analytic, Engine::Both]
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown engine '{s}'")))
    }
}

/// Evenly spaced values `min..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub param: ParamName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: ParamName, min: f64, max: f64, count: usize) -> Self {
        Self {
            param,
            min,
            max,
            count,
        }
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.max
                } else {
                    self.min + (self.max - self.min) * (i as f64 / last)
                }
            })
            .collect()
    }
}

/// Discrete outer loop, e.g. a handful of mode couplings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub param: ParamName,
    pub values: Vec<f64>,
}

fn default_cutoffs() -> [usize; 2] {
    [4, 4]
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub engine: Engine,
    /// `[n_a_max, n_b_max]` for master-equation points.
    #[serde(default = "default_cutoffs")]
    pub cutoffs: [usize; 2],
    pub outputs: Vec<Output>,
    /// Append `log10_<name>` next to every correlation column.
    #[serde(default, skip_serializing_if = "is_false")]
    pub log10: bool,
    #[serde(default)]
    pub base: SystemParams,
    pub axes: Vec<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Series>,
    /// Free text copied to the `note` metadata entry.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl SweepSpec {
    pub fn new(base: SystemParams, axes: Vec<Axis>, outputs: Vec<Output>) -> Self {
        Self {
            name: String::new(),
            engine: Engine::default(),
            cutoffs: default_cutoffs(),
            outputs,
            log10: false,
            base,
            axes,
            series: None,
            note: String::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::Config(format!(
                "a sweep needs one or two axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            if axis.count < 2 {
                return Err(Error::Config(format!(
                    "axis {} needs at least 2 points",
                    axis.param
                )));
            }
            if !(axis.min.is_finite() && axis.max.is_finite() && axis.min < axis.max) {
                return Err(Error::Config(format!(
                    "axis {} needs finite min < max, got [{}, {}]",
                    axis.param, axis.min, axis.max
                )));
            }
        }
        let mut swept: Vec<&str> = self
            .axes
            .iter()
            .flat_map(|a| a.param.fields())
            .copied()
            .collect();
        if let Some(series) = &self.series {
            if series.values.is_empty() {
                return Err(Error::Config(format!(
                    "series {} has no values",
                    series.param
                )));
            }
            if series.values.iter().any(|v| !v.is_finite()) {
                return Err(Error::Config(format!(
                    "series {} has non-finite values",
                    series.param
                )));
            }
            swept.extend(series.param.fields());
        }
        let total = swept.len();
        swept.sort_unstable();
        swept.dedup();
        if swept.len() != total {
            return Err(Error::Config("swept parameters overlap".into()));
        }
        if self.outputs.is_empty() {
            return Err(Error::Config("no outputs requested".into()));
        }
        FockSpace::new(self.cutoffs[0], self.cutoffs[1])?;
        Ok(())
    }

    /// Output columns in emission order, including the implied analytic
    /// column of [`Engine::Both`] and without duplicates.
    pub fn resolved_outputs(&self) -> Vec<Output> {
        let mut out: Vec<Output> = Vec::new();
        for o in &self.outputs {
            if !out.contains(o) {
                out.push(*o);
            }
        }
        if self.engine == Engine::Both && !out.contains(&Output::G2Analytic) {
            out.push(Output::G2Analytic);
        }
        out
    }

    pub fn columns(&self) -> Vec<String> {
        let mut cols = Vec::new();
        if let Some(series) = &self.series {
            cols.push(series.param.to_string());
        }
        cols.extend(self.axes.iter().map(|a| a.param.to_string()));
        let outputs = self.resolved_outputs();
        cols.extend(outputs.iter().map(|o| o.to_string()));
        if self.log10 {
            cols.extend(
                outputs
                    .iter()
                    .filter(|o| o.is_correlation())
                    .map(|o| format!("log10_{o}")),
            );
        }
        cols.push("error".into());
        cols
    }

    /// Grid coordinates in row order: series outermost, last axis fastest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let outer: Vec<Option<f64>> = match &self.series {
            Some(s) => s.values.iter().copied().map(Some).collect(),
            None => vec![None],
        };
        let axis_values: Vec<Vec<f64>> = self.axes.iter().map(Axis::values).collect();
        let mut pts = Vec::new();
        for s in outer {
            let mut coords: Vec<Vec<f64>> = vec![s.into_iter().collect()];
            for values in &axis_values {
                coords = coords
                    .iter()
                    .flat_map(|prefix| {
                        values.iter().map(move |&v| {
                            let mut c = prefix.clone();
                            c.push(v);
                            c
                        })
                    })
                    .collect();
            }
            pts.extend(coords);
        }
        pts
    }

    pub fn params_at(&self, coords: &[f64]) -> SystemParams {
        let mut p = self.base;
        let names = self
            .series
            .iter()
            .map(|s| s.param)
            .chain(self.axes.iter().map(|a| a.param));
        for (name, &v) in names.zip(coords) {
            name.apply(&mut p, v);
        }
        p
    }

    /// Flattened echo of every setting, for table metadata.
    pub fn metadata(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert("name".into(), self.name.clone());
        m.insert("engine".into(), self.engine.as_str().into());
        m.insert(
            "cutoffs".into(),
            format!("{},{}", self.cutoffs[0], self.cutoffs[1]),
        );
        m.insert(
            "outputs".into(),
            self.resolved_outputs()
                .iter()
                .map(|o| o.as_str())
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert("log10".into(), self.log10.to_string());
        let b = &self.base;
        for (k, v) in [
            ("delta", b.delta),
            ("delta_a", b.delta_a),
            ("j_coupling", b.j_coupling),
            ("g_a", b.g_a),
            ("g_b", b.g_b),
            ("drive", b.drive),
            ("kappa", b.kappa),
            ("gamma_a", b.gamma_a),
            ("gamma_p", b.gamma_p),
        ] {
            m.insert(format!("base.{k}"), v.to_string());
        }
        for (i, a) in self.axes.iter().enumerate() {
            m.insert(
                format!("axis{i}"),
                format!("{} {} {} {}", a.param, a.min, a.max, a.count),
            );
        }
        if let Some(s) = &self.series {
            let values: Vec<String> = s.values.iter().map(|v| v.to_string()).collect();
            m.insert("series".into(), format!("{} {}", s.param, values.join(",")));
        }
        if !self.note.is_empty() {
            m.insert("note".into(), self.note.clone());
        }
        m.insert(
            "tool".into(),
            format!("blockade-core {}", env!("CARGO_PKG_VERSION")),
        );
        m
    }
}

/// Lazily computed solutions shared by the outputs of one grid point.
/// Failures are cached as error codes.
struct PointSolver<'a> {
    params: SystemParams,
    spec: &'a SweepSpec,
    rho: Option<std::result::Result<DensityMatrix, u32>>,
    amplitudes: Option<std::result::Result<AmplitudeSet, u32>>,
}

impl PointSolver<'_> {
    fn rho(&mut self) -> std::result::Result<&DensityMatrix, u32> {
        let (params, cutoffs) = (self.params, self.spec.cutoffs);
        self.rho
            .get_or_insert_with(|| {
                FockSpace::new(cutoffs[0], cutoffs[1])
                    .and_then(|space| solve_params(&params, space))
                    .map_err(|e| e.code())
            })
            .as_ref()
            .map_err(|&c| c)
    }

    fn amplitudes(&mut self) -> std::result::Result<&AmplitudeSet, u32> {
        let params = self.params;
        self.amplitudes
            .get_or_insert_with(|| solve_weak_drive(&params).map_err(|e| e.code()))
            .as_ref()
            .map_err(|&c| c)
    }

    fn value(&mut self, output: Output) -> std::result::Result<f64, u32> {
        let code = |e: Error| e.code();
        let analytic = self.spec.engine == Engine::Analytic;
        match output {
            o if o.follows_engine() && analytic => {
                let c = self.amplitudes()?;
                match o {
                    Output::G2Ccw => c.g2_ccw().map_err(code),
                    Output::G2Cw => c.g2_cw().map_err(code),
                    Output::NCcw => Ok(c.n_ccw()),
                    _ => Ok(c.n_cw()),
                }
            }
            Output::G2Ccw => g2_zero(self.rho()?, Mode::Ccw).map_err(code),
            Output::G2Cw => g2_zero(self.rho()?, Mode::Cw).map_err(code),
            Output::NCcw => Ok(mean_photon(self.rho()?, Mode::Ccw)),
            Output::NCw => Ok(mean_photon(self.rho()?, Mode::Cw)),
            Output::PT | Output::PR => {
                let pt = spectrum(&self.params, &[self.params.delta]).map_err(code)?[0];
                Ok(if output == Output::PT { pt.p_t } else { pt.p_r })
            }
            Output::G2Analytic => self.amplitudes()?.g2_ccw().map_err(code),
            Output::C100Sq => Ok(self.amplitudes()?.c_100m.norm_sqr()),
            Output::C200Sq => Ok(self.amplitudes()?.c_200m.norm_sqr()),
        }
    }

    fn residual(&self) -> Option<f64> {
        match &self.rho {
            Some(Ok(rho)) => Some(rho.residual()),
            _ => None,
        }
    }
}

struct PointResult {
    row: Vec<f64>,
    error_code: u32,
    /// At least one output was computed.
    produced: bool,
    residual: Option<f64>,
}

fn evaluate(spec: &SweepSpec, outputs: &[Output], coords: &[f64]) -> PointResult {
    let mut solver = PointSolver {
        params: spec.params_at(coords),
        spec,
        rho: None,
        amplitudes: None,
    };
    let mut row = coords.to_vec();
    let mut error_code = 0;
    let mut produced = false;
    let mut values = Vec::with_capacity(outputs.len());
    for &o in outputs {
        match solver.value(o) {
            Ok(v) => {
                produced = true;
                values.push(v);
            }
            Err(code) => {
                if error_code == 0 {
                    error_code = code;
                }
                values.push(f64::NAN);
            }
        }
    }
    row.extend(&values);
    if spec.log10 {
        row.extend(
            outputs
                .iter()
                .zip(&values)
                .filter(|(o, _)| o.is_correlation())
                .map(|(_, v)| v.log10()),
        );
    }
    row.push(error_code as f64);
    PointResult {
        row,
        error_code,
        produced,
        residual: solver.residual(),
    }
}

/// Runs a sweep on the global rayon pool.
pub fn run_sweep(spec: &SweepSpec) -> Result<ResultTable> {
    run_sweep_with_threads(spec, None)
}

/// Runs a sweep with an explicit worker count. `Some(1)` evaluates points
/// serially on the calling thread; `None` uses the global pool. Row order
/// and values do not depend on the worker count.
pub fn run_sweep_with_threads(spec: &SweepSpec, threads: Option<usize>) -> Result<ResultTable> {
    spec.validate()?;
    let outputs = spec.resolved_outputs();
    let points = spec.points();
    let eval = |c: &Vec<f64>| evaluate(spec, &outputs, c);
    let results: Vec<PointResult> = match threads {
        Some(1) => points.iter().map(eval).collect(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(|| points.par_iter().map(eval).collect()),
        None => points.par_iter().map(eval).collect(),
    };

    let failed = results.iter().filter(|r| r.error_code != 0).count();
    if !results.iter().any(|r| r.produced) {
        return Err(Error::SweepFailed { points: failed });
    }

    let mut metadata = spec.metadata();
    metadata.insert("points".into(), results.len().to_string());
    metadata.insert("failed_points".into(), failed.to_string());
    let residuals: Vec<f64> = results.iter().filter_map(|r| r.residual).collect();
    if !residuals.is_empty() {
        let max = residuals.iter().copied().fold(0.0, f64::max);
        let mean = residuals.iter().sum::<f64>() / residuals.len() as f64;
        metadata.insert("residual_max".into(), format!("{max:e}"));
        metadata.insert("residual_mean".into(), format!("{mean:e}"));
    }

    let mut table = ResultTable::new(spec.columns(), metadata);
    for r in results {
        table.push_row(r.row)?;
    }
    Ok(table)
}
