// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! TOML sweep descriptions.
//!
//! ```toml
//! name = "detuning scan"
//! engine = "both"
//! cutoffs = [4, 4]
//! outputs = ["g2_ccw"]
//!
//! [base]
//! kappa = 40.0
//! g_a = 20.0
//! g_b = 20.0
//!
//! [[axes]]
//! param = "delta_both"
//! min = -120.0
//! max = 120.0
//! count = 241
//!
//! [series]
//! param = "j_coupling"
//! values = [0.0, 1200.0]
//! ```
//!
//! Fields left out of `[base]` take the baseline values of
//! [`SystemParams::baseline`](crate::SystemParams::baseline); the resolved
//! set is echoed into the table metadata.

use std::fs;
use std::path::Path;

use super::sweep::SweepSpec;
use crate::error::{Error, Result};

pub fn parse_spec(text: &str) -> Result<SweepSpec> {
    let spec: SweepSpec = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

pub fn load_spec(path: &Path) -> Result<SweepSpec> {
    let text = fs::read_to_string(path)?;
    parse_spec(&text)
}

pub fn spec_to_toml(spec: &SweepSpec) -> Result<String> {
    toml::to_string(spec).map_err(|e| Error::Config(e.to_string()))
}
