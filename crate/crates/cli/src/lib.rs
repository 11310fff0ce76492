//! Command-line front end: `compute`, `validate`, `bench` and `export-ply`.
//!
//! Exit codes: 0 success, 1 I/O or parse failure, 2 invalid arguments,
//! 3 engine guard (brute-force size limit, iteration cap), 4 validation
//! failure. Diagnostics go to standard error; standard output carries data
//! only when an output path is `-`.

// Negated float comparisons are deliberate: NaN must fail range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod bench;
pub mod check;
pub mod commands;
pub mod error;
pub mod files;

use std::ffi::OsString;

use clap::Parser;
use geodesic_core::load_mesh;

use crate::args::{BenchArgs, Cli, Command};
use crate::bench::{run_bench, BenchPlan};
pub use crate::error::CliError;
use crate::error::EXIT_USAGE;
use crate::files::{load_sources, with_output};

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Compute(a) => commands::compute(a),
        Command::Validate(a) => commands::validate(a),
        Command::Bench(a) => bench(a),
        Command::ExportPly(a) => commands::export_ply(a),
    }
}

fn bench(a: &BenchArgs) -> Result<(), CliError> {
    let mut meshes = Vec::new();
    for path in &a.mesh {
        let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        meshes.push((name, load_mesh(path, a.format.map(Into::into))?));
    }
    let mut fixed = a.source.clone();
    if let Some(p) = &a.sources {
        fixed.extend(load_sources(p)?);
    }
    let plan = BenchPlan {
        meshes,
        ks: a.k.clone(),
        threads: a.threads.clone(),
        selection: a.selection.into(),
        epsilon_window: a.epsilon,
        seed: a.seed,
        repetitions: a.repetitions,
        fixed_sources: (!fixed.is_empty()).then_some(fixed),
    };
    let report = run_bench(&plan)?;
    if let Some(out) = &a.out {
        let csv = report.to_csv(plan.selection);
        with_output(out, |w| w.write_all(csv.as_bytes()))?;
    }
    if let Some(path) = &a.stats {
        let json = report.to_json();
        with_output(path, |w| writeln!(w, "{json}"))?;
    }
    Ok(())
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
