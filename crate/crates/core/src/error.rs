// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid truncation: cutoffs ({n_a_max}, {n_b_max}) must both be >= 1")]
    InvalidTruncation { n_a_max: usize, n_b_max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("steady state is not unique (smallest relative pivot {relative_pivot:e})")]
    DegenerateSteadyState { relative_pivot: f64 },

    #[error("steady-state solver did not converge (residual {residual:e})")]
    SolverFailure { residual: f64 },

    #[error("steady state is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NonPhysicalState { min_eigenvalue: f64 },

    #[error("second-order correlation undefined: mean photon number {mean_photon:e} below guard")]
    UndefinedCorrelation { mean_photon: f64 },

    #[error("analytic weak-drive expression is singular at {point}")]
    AnalyticSingularity { point: String },

    #[error("unknown figure preset '{0}'")]
    UnknownPreset(String),

    #[error("every sweep point failed ({points} points)")]
    SweepFailed { points: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable numeric code written into the `error` column of sweep tables.
    /// Zero is reserved for success.
    pub fn code(&self) -> u32 {
        match self {
            Error::InvalidTruncation { .. } => 1,
            Error::DimensionMismatch { .. } => 2,
            Error::InvalidParams(_) => 3,
            Error::InvalidArgument(_) => 4,
            Error::DegenerateSteadyState { .. } => 5,
            Error::SolverFailure { .. } => 6,
            Error::NonPhysicalState { .. } => 7,
            Error::UndefinedCorrelation { .. } => 8,
            Error::AnalyticSingularity { .. } => 9,
            Error::UnknownPreset(_) => 10,
            Error::SweepFailed { .. } => 11,
            Error::Config(_) => 12,
            Error::MalformedTable(_) => 13,
            Error::Io(_) => 14,
            Error::Csv(_) => 15,
        }
    }

    /// Short machine-readable name, used in CLI error summaries.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidTruncation { .. } => "invalid_truncation",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidParams(_) => "invalid_params",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::DegenerateSteadyState { .. } => "degenerate_steady_state",
            Error::SolverFailure { .. } => "solver_failure",
            Error::NonPhysicalState { .. } => "non_physical_state",
            Error::UndefinedCorrelation { .. } => "undefined_correlation",
            Error::AnalyticSingularity { .. } => "analytic_singularity",
            Error::UnknownPreset(_) => "unknown_preset",
            Error::SweepFailed { .. } => "sweep_failed",
            Error::Config(_) => "config",
            Error::MalformedTable(_) => "malformed_table",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
        }
    }
}
