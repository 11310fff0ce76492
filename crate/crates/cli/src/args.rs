use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geodesic_core::engine::SelectionMode;
use geodesic_core::MeshFormat;

#[derive(Debug, Parser)]
#[command(name = "geodesic", version, about = "Exact geodesic distances on triangle meshes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a distance field and write it to a file.
    Compute(ComputeArgs),
    /// Cross-check the engines on one mesh, or check a distance file.
    Validate(ValidateArgs),
    /// Time the parallel engine over sweeps of k and thread counts.
    Bench(BenchArgs),
    /// Write the mesh as PLY, optionally with a distance field attached.
    ExportPly(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    /// Batched parallel window propagation.
    Pch,
    /// Sequential priority-queue window propagation.
    Ich,
    /// Shortest paths along edges (an upper bound, not exact).
    Dijkstra,
    /// Exhaustive unfolding oracle for meshes of at most 200 faces.
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Obj,
    Ply,
}

impl From<FormatArg> for MeshFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Obj => MeshFormat::Obj,
            FormatArg::Ply => MeshFormat::Ply,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SelectionArg {
    Exact,
    Strided,
}

impl From<SelectionArg> for SelectionMode {
    fn from(s: SelectionArg) -> Self {
        match s {
            SelectionArg::Exact => SelectionMode::Exact,
            SelectionArg::Strided => SelectionMode::Strided,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct MeshArgs {
    /// OBJ or PLY triangle mesh.
    #[arg(long)]
    pub mesh: PathBuf,
    /// Override the format guessed from the file extension.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Clone, Debug, Default, Args)]
pub struct SourceArgs {
    /// Source vertex index (repeatable).
    #[arg(long = "source")]
    pub source: Vec<usize>,
    /// File of whitespace-separated source indices; `#` starts a comment.
    #[arg(long)]
    pub sources: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct EngineArgs {
    #[arg(long, value_enum, default_value = "pch")]
    pub algo: Algo,
    /// Windows propagated per round (pch only).
    #[arg(long)]
    pub k: Option<usize>,
    /// Worker threads (pch only).
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    pub selection: SelectionArg,
    /// Windows narrower than this fraction of their edge are dropped.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Recorded in the configuration; bench uses it to draw sources.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub sources: SourceArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Distance file; `-` for standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run statistics as JSON.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Also write the mesh with a `geodesic_distance` vertex property.
    #[arg(long)]
    pub ply: Option<PathBuf>,
    /// Write the PLY as ASCII instead of binary little-endian.
    #[arg(long)]
    pub ascii: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub sources: SourceArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Check this distance file instead of the engine under test.
    #[arg(long)]
    pub compare: Option<PathBuf>,
    /// Relative tolerance for every check.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Write the report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Meshes to benchmark (repeatable).
    #[arg(long, required = true)]
    pub mesh: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Fixed source vertices; without them each repetition draws one at
    /// random from `--seed`.
    #[arg(long = "source")]
    pub source: Vec<usize>,
    #[arg(long)]
    pub sources: Option<PathBuf>,
    /// Values of k (comma-separated or repeated).
    #[arg(long, value_delimiter = ',', default_value = "256,1024,4096,16384")]
    pub k: Vec<usize>,
    /// Thread counts (comma-separated or repeated).
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub threads: Vec<usize>,
    #[arg(long, value_enum, default_value = "exact")]
    pub selection: SelectionArg,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub repetitions: usize,
    /// Per-run counts as CSV (deterministic for a fixed seed).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Timing summary as JSON.
    #[arg(long)]
    pub stats: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Attach the distance field from these sources.
    #[command(flatten)]
    pub sources: SourceArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// PLY file to write.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub ascii: bool,
}
