// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps, figure presets, CSV tables and the self-test suite.

pub mod checks;
pub mod config;
pub mod presets;
pub mod sweep;
pub mod table;

pub use checks::{run_checks, CheckResult};
pub use config::{load_spec, parse_spec, spec_to_toml};
pub use presets::{figure_preset, PRESET_NAMES};
pub use sweep::{
    run_sweep, run_sweep_with_threads, Axis, Engine, Output, ParamName, Series, SweepSpec,
};
pub use table::{emit_csv, ResultTable};
