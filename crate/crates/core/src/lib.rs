// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

// tolerance checks are written so that NaN fails them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
pub mod fock;
pub mod harness;
mod lu;
pub mod meanfield;
pub mod steadystate;
pub mod weakdrive;

pub use dynamics::{
    hamiltonian_eff, liouvillian, nonhermitian_hamiltonian, Superoperator, SystemParams,
};
pub use error::{Error, Result};
pub use fock::{BasisState, EmitterState, FockSpace, Mode, OperatorMatrix};
pub use harness::{
    emit_csv, figure_preset, load_spec, parse_spec, run_sweep, run_sweep_with_threads, Axis,
    Engine, Output, ParamName, ResultTable, Series, SweepSpec,
};
pub use meanfield::{mean_fields, scatterer_coupling, spectrum, ScattererSpec, SpectrumPoint};
pub use steadystate::{
    check_truncation, g2_zero, mean_photon, solve_params, steady_state, DensityMatrix,
    TruncationReport,
};
pub use weakdrive::{
    c_amplitudes_closed_form, g2_closed_form, g2_ratio_asymptotic, solve_weak_drive, AmplitudeSet,
    ComplexDetunings,
};
