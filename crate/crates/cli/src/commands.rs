use std::path::Path;
use std::time::Instant;

use geodesic_core::engine::{
    brute_force_geodesic, run_dijkstra, run_ich_with, run_pch, DistanceField, EngineConfig, RunStats,
    BRUTE_FORCE_FACE_LIMIT,
};
use geodesic_core::mesh::io::{save_ply, PlyEncoding};
use geodesic_core::{load_mesh, SurfaceMesh};
use serde::Serialize;

use crate::args::{Algo, ComputeArgs, EngineArgs, ExportArgs, MeshArgs, SourceArgs, ValidateArgs};
use crate::check::{compare_fields, lipschitz_violations, sandwich, Comparison};
use crate::error::CliError;
use crate::files::{load_distances, load_sources, with_output, write_distances};

/// Per-vertex lines printed before a mismatch report is cut short.
const REPORT_LINES: usize = 50;

pub fn open_mesh(args: &MeshArgs) -> Result<SurfaceMesh, CliError> {
    Ok(load_mesh(&args.mesh, args.format.map(Into::into))?)
}

/// Inline sources followed by those from `--sources`, duplicates removed.
pub fn gather_sources(args: &SourceArgs) -> Result<Vec<usize>, CliError> {
    let mut out = args.source.clone();
    if let Some(path) = &args.sources {
        out.extend(load_sources(path)?);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|s| seen.insert(*s));
    Ok(out)
}

pub fn engine_config(args: &EngineArgs) -> EngineConfig {
    if args.algo != Algo::Pch {
        if args.k.is_some() {
            eprintln!("warning: --k only applies to --algo pch; ignored");
        }
        if args.threads.is_some() {
            eprintln!("warning: --threads only applies to --algo pch; ignored");
        }
    }
    let mut c = EngineConfig::default().with_selection(args.selection.into());
    if let Some(k) = args.k {
        c.k = k;
    }
    if let Some(t) = args.threads {
        c.workers = t;
    }
    if let Some(e) = args.epsilon {
        c.epsilon_window = e;
    }
    c.seed = args.seed;
    c
}

/// Runs one algorithm. Engines without window statistics report only
/// sizes and wall time.
pub fn run_algo(
    mesh: &SurfaceMesh,
    sources: &[usize],
    algo: Algo,
    config: &EngineConfig,
) -> Result<(DistanceField, RunStats), CliError> {
    config.validate()?;
    let plain = |name: &str, seconds: f64| {
        let mut s = RunStats::new(name);
        s.vertices = mesh.num_vertices();
        s.faces = mesh.num_faces();
        s.sources = sources.len();
        s.total_seconds = seconds;
        s
    };
    let start = Instant::now();
    Ok(match algo {
        Algo::Pch => run_pch(mesh, sources, config)?,
        Algo::Ich => run_ich_with(mesh, sources, config.kernel())?,
        Algo::Dijkstra => {
            let d = run_dijkstra(mesh, sources)?;
            (d, plain("dijkstra", start.elapsed().as_secs_f64()))
        }
        Algo::Brute => {
            let d = brute_force_geodesic(mesh, sources, mesh.num_faces())?;
            (d, plain("brute", start.elapsed().as_secs_f64()))
        }
    })
}

fn write_stats(path: &Path, stats: &RunStats) -> Result<(), CliError> {
    with_output(path, |w| writeln!(w, "{}", stats.to_json()))
}

fn write_ply(path: &Path, mesh: &SurfaceMesh, d: Option<&[f64]>, ascii: bool) -> Result<(), CliError> {
    let encoding = if ascii { PlyEncoding::Ascii } else { PlyEncoding::BinaryLittleEndian };
    Ok(save_ply(path, mesh, d, encoding)?)
}

pub fn compute(args: &ComputeArgs) -> Result<(), CliError> {
    let mesh = open_mesh(&args.mesh)?;
    let sources = gather_sources(&args.sources)?;
    let config = engine_config(&args.engine);
    let (d, stats) = run_algo(&mesh, &sources, args.engine.algo, &config)?;
    if let Some(out) = &args.out {
        with_output(out, |w| write_distances(w, d.values()))?;
    }
    if let Some(path) = &args.stats {
        write_stats(path, &stats)?;
    }
    if let Some(path) = &args.ply {
        write_ply(path, &mesh, Some(d.values()), args.ascii)?;
    }
    eprintln!(
        "{}: {} vertices, {} windows, {} iterations, {:.3} s",
        stats.algorithm, stats.vertices, stats.total_windows_created, stats.iterations, stats.total_seconds
    );
    Ok(())
}

pub fn export_ply(args: &ExportArgs) -> Result<(), CliError> {
    let mesh = open_mesh(&args.mesh)?;
    let sources = gather_sources(&args.sources)?;
    let field = if sources.is_empty() {
        None
    } else {
        let config = engine_config(&args.engine);
        Some(run_algo(&mesh, &sources, args.engine.algo, &config)?.0)
    };
    write_ply(&args.out, &mesh, field.as_ref().map(|d| d.values()), args.ascii)
}

#[derive(Debug, Serialize)]
struct ValidationReport {
    vertices: usize,
    faces: usize,
    sources: Vec<usize>,
    tested: String,
    tolerance: f64,
    max_relative_deviation_vs_ich: f64,
    max_relative_deviation_vs_brute: Option<f64>,
    mismatched_vertices: usize,
    lipschitz_violations: usize,
    below_euclidean: usize,
    above_dijkstra: usize,
    passed: bool,
}

pub fn validate(args: &ValidateArgs) -> Result<(), CliError> {
    let mesh = open_mesh(&args.mesh)?;
    let sources = gather_sources(&args.sources)?;
    let config = engine_config(&args.engine);
    let tol = args.tolerance;

    let (tested, label) = match &args.compare {
        Some(path) => (load_distances(path)?, path.display().to_string()),
        None => {
            let (d, _) = run_algo(&mesh, &sources, args.engine.algo, &config)?;
            (d.into_vec(), format!("{:?}", args.engine.algo).to_lowercase())
        }
    };
    if tested.len() != mesh.num_vertices() {
        return Err(CliError::Mismatch(format!(
            "{label} has {} values for a mesh of {} vertices",
            tested.len(),
            mesh.num_vertices()
        )));
    }
    let (ich, _) = run_algo(&mesh, &sources, Algo::Ich, &config)?;
    let vs_ich = compare_fields(&tested, ich.values(), tol);
    let vs_brute = if mesh.num_faces() <= BRUTE_FORCE_FACE_LIMIT {
        let (b, _) = run_algo(&mesh, &sources, Algo::Brute, &config)?;
        Some(compare_fields(&tested, b.values(), tol))
    } else {
        None
    };
    let lipschitz = lipschitz_violations(&mesh, &tested, tol);
    let bounds = sandwich(&mesh, &sources, &tested, tol)?;

    let mismatched = vs_ich.mismatches.len() + vs_brute.as_ref().map_or(0, |c| c.mismatches.len());
    let passed = mismatched == 0 && lipschitz.is_empty() && bounds.passed();
    let report = ValidationReport {
        vertices: mesh.num_vertices(),
        faces: mesh.num_faces(),
        sources: sources.clone(),
        tested: label.clone(),
        tolerance: tol,
        max_relative_deviation_vs_ich: vs_ich.max_relative_deviation,
        max_relative_deviation_vs_brute: vs_brute.as_ref().map(|c| c.max_relative_deviation),
        mismatched_vertices: vs_ich.mismatches.len(),
        lipschitz_violations: lipschitz.len(),
        below_euclidean: bounds.below_euclidean.len(),
        above_dijkstra: bounds.above_dijkstra.len(),
        passed,
    };

    eprintln!("tested {label} on {} vertices", mesh.num_vertices());
    eprintln!("max relative deviation vs ich: {:e}", vs_ich.max_relative_deviation);
    if let Some(c) = &vs_brute {
        eprintln!("max relative deviation vs brute force: {:e}", c.max_relative_deviation);
    }
    eprintln!("edge-Lipschitz violations: {}", lipschitz.len());
    eprintln!(
        "bound violations: {} below Euclidean, {} above edge paths",
        bounds.below_euclidean.len(),
        bounds.above_dijkstra.len()
    );
    print_mismatches("ich", &vs_ich);
    if let Some(c) = &vs_brute {
        print_mismatches("brute", c);
    }
    for &(a, b, excess) in lipschitz.iter().take(REPORT_LINES) {
        eprintln!("edge {a}-{b}: distance gap exceeds edge length by {excess:e}");
    }
    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        with_output(path, |w| writeln!(w, "{json}"))?;
    }
    if passed {
        eprintln!("ok");
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{mismatched} vertex mismatches, {} Lipschitz violations, {} bound violations",
            lipschitz.len(),
            bounds.below_euclidean.len() + bounds.above_dijkstra.len()
        )))
    }
}

fn print_mismatches(reference: &str, c: &Comparison) {
    for &(v, got, want) in c.mismatches.iter().take(REPORT_LINES) {
        eprintln!("vertex {v}: tested {got:.16e}, {reference} {want:.16e}");
    }
    if c.mismatches.len() > REPORT_LINES {
        eprintln!("... {} more vertices differ from {reference}", c.mismatches.len() - REPORT_LINES);
    }
}
