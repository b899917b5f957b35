// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! `blockade`: sweeps, figure presets and self-checks from the command line.
//!
//! Tables go to stdout or `--out`. Failures print a one-line JSON summary
//! `{"error": kind, "code": n, "message": text}` on stderr and exit with 1.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use blockade_core::harness::checks::run_checks;
use blockade_core::harness::PRESET_NAMES;
use blockade_core::{
    emit_csv, figure_preset, load_spec, run_sweep_with_threads, Axis, Engine, Error, Output,
    ParamName, ResultTable, Series, SweepSpec, SystemParams,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "blockade",
    version,
    about = "Photon blockade in a coupled-mode cavity with a quantum emitter"
)]
struct Cli {
    /// Worker threads for grid points (default: all cores)
    #[arg(long, global = true, env = "BLOCKADE_THREADS")]
    threads: Option<usize>,

    /// Write the table here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mean-field transmission and reflection versus cavity detuning
    Spectrum(SpectrumArgs),
    /// Run a sweep described by a TOML file
    Sweep {
        config: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a built-in figure preset
    Figure {
        /// Preset name; omit with --list
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// Print the preset names and exit
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the invariant suite
    Check {
        /// Fock cutoff for the master-equation checks
        #[arg(long, default_value_t = 4)]
        cutoff: usize,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Fock cutoff for both modes, overriding the config or preset
    #[arg(long)]
    cutoff: Option<usize>,
    /// master_equation, analytic or both
    #[arg(long)]
    engine: Option<Engine>,
    /// Add log10 columns for the correlation outputs
    #[arg(long)]
    log10: bool,
}

impl RunArgs {
    fn apply(&self, spec: &mut SweepSpec) -> Result<(), Error> {
        if let Some(c) = self.cutoff {
            spec.cutoffs = [c, c];
        }
        if let Some(e) = self.engine {
            spec.engine = e;
        }
        spec.log10 |= self.log10;
        spec.validate()
    }
}

#[derive(Args)]
struct SpectrumArgs {
    /// Mode coupling J
    #[arg(long, default_value_t = 240.0)]
    j: f64,
    #[arg(long, default_value_t = 40.0)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    drive: f64,
    #[arg(long, default_value_t = -400.0, allow_negative_numbers = true)]
    min: f64,
    #[arg(long, default_value_t = 400.0, allow_negative_numbers = true)]
    max: f64,
    #[arg(long, default_value_t = 401)]
    count: usize,
}

impl SpectrumArgs {
    fn spec(&self) -> SweepSpec {
        let base = SystemParams {
            kappa: self.kappa,
            drive: self.drive,
            ..SystemParams::baseline().with_g(0.0)
        };
        let mut spec = SweepSpec::new(
            base,
            vec![Axis::new(ParamName::Delta, self.min, self.max, self.count)],
            vec![Output::PT, Output::PR],
        );
        spec.name = "spectrum".into();
        spec.series = Some(Series {
            param: ParamName::JCoupling,
            values: vec![self.j],
        });
        spec
    }
}

#[derive(Serialize)]
struct ErrorSummary<'a> {
    error: &'a str,
    code: u32,
    message: String,
}

fn write_table(table: &ResultTable, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => emit_csv(table, path),
        None => table.emit(io::stdout().lock()),
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let out = cli.out.as_ref();
    let spec = match cli.command {
        Command::Spectrum(args) => args.spec(),
        Command::Sweep { config, run } => {
            let mut spec = load_spec(&config)?;
            run.apply(&mut spec)?;
            spec
        }
        Command::Figure { list: true, .. } => {
            let mut stdout = io::stdout().lock();
            for name in PRESET_NAMES {
                writeln!(stdout, "{name}")?;
            }
            return Ok(true);
        }
        Command::Figure { name, run, .. } => {
            let mut spec = figure_preset(name.as_deref().unwrap_or_default())?;
            run.apply(&mut spec)?;
            spec
        }
        Command::Check { cutoff } => {
            let results = run_checks(cutoff);
            let mut stdout = io::stdout().lock();
            for r in &results {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                writeln!(stdout, "{verdict} {}: {}", r.name, r.detail)?;
            }
            return Ok(results.iter().all(|r| r.passed));
        }
    };
    let table = run_sweep_with_threads(&spec, cli.threads)?;
    write_table(&table, out)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            let summary = ErrorSummary {
                error: e.kind(),
                code: e.code(),
                message: e.to_string(),
            };
            let line = serde_json::to_string(&summary).unwrap_or_else(|_| e.to_string());
            eprintln!("{line}");
            ExitCode::FAILURE
        }
    }
}
