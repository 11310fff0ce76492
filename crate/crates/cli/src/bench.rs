//! Sweeps of k and thread count with seeded random sources.
//!
//! The CSV holds only run counts, which are a function of the mesh, the
//! sources and the configuration, so a fixed seed reproduces it byte for
//! byte. Wall times go to the JSON summary.

use std::fmt::Write as _;

use geodesic_core::engine::{run_ich_with, run_pch, EngineConfig, RunStats, SelectionMode};
use geodesic_core::SurfaceMesh;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::CliError;

pub struct BenchPlan {
    pub meshes: Vec<(String, SurfaceMesh)>,
    pub ks: Vec<usize>,
    pub threads: Vec<usize>,
    pub selection: SelectionMode,
    pub epsilon_window: Option<f64>,
    pub seed: u64,
    pub repetitions: usize,
    /// Used for every repetition instead of a random vertex.
    pub fixed_sources: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub mesh: String,
    pub algo: String,
    pub k: usize,
    pub threads: usize,
    pub repetition: usize,
    pub sources: String,
    pub stats: RunStats,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchSummary {
    pub mesh: String,
    pub faces: usize,
    pub algo: String,
    pub k: usize,
    pub threads: usize,
    pub selection: SelectionMode,
    pub repetitions: usize,
    pub mean_seconds: f64,
    pub stddev_seconds: f64,
    pub mean_select_seconds: f64,
    pub mean_propagate_seconds: f64,
    pub mean_organize_seconds: f64,
    pub mean_events_seconds: f64,
    /// Propagation time over total time.
    pub propagation_share: f64,
    pub mean_windows: f64,
    pub mean_iterations: f64,
    /// Mean windows over the sequential engine's mean windows.
    pub windows_vs_ich: f64,
    /// Total-time speedup over the smallest thread count with the same k.
    pub speedup: Option<f64>,
    pub propagation_speedup: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchReport {
    pub schema: u32,
    pub seed: u64,
    pub available_threads: usize,
    pub summary: Vec<BenchSummary>,
    #[serde(skip)]
    pub rows: Vec<BenchRow>,
}

const CSV_HEADER: &str = "mesh,algo,k,threads,selection,repetition,sources,windows_created,windows_pruned,\
windows_processed,iterations,peak_active_pool,events_created,events_applied";

impl BenchReport {
    pub fn to_csv(&self, selection: SelectionMode) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        let mode = match selection {
            SelectionMode::Exact => "exact",
            SelectionMode::Strided => "strided",
        };
        for r in &self.rows {
            let st = &r.stats;
            let mode = if r.algo == "ich" { "-" } else { mode };
            writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.mesh,
                r.algo,
                r.k,
                r.threads,
                mode,
                r.repetition,
                r.sources,
                st.total_windows_created,
                st.total_windows_pruned,
                st.windows_processed,
                st.iterations,
                st.peak_active_pool,
                st.events_created,
                st.events_applied
            )
            .expect("writing to a string");
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Source sets for each repetition on one mesh.
pub fn draw_sources(num_vertices: usize, seed: u64, mesh_index: usize, repetitions: usize) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(mesh_index as u64));
    (0..repetitions).map(|_| vec![rng.gen_range(0..num_vertices)]).collect()
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

fn summarize(mesh: &str, faces: usize, algo: &str, k: usize, threads: usize, selection: SelectionMode, runs: &[RunStats]) -> BenchSummary {
    let field = |f: fn(&RunStats) -> f64| runs.iter().map(f).collect::<Vec<f64>>();
    let (mean, std) = mean_std(&field(|s| s.total_seconds));
    let avg = |f: fn(&RunStats) -> f64| mean_std(&field(f)).0;
    let propagate = avg(|s| s.propagate_seconds);
    BenchSummary {
        mesh: mesh.to_string(),
        faces,
        algo: algo.to_string(),
        k,
        threads,
        selection,
        repetitions: runs.len(),
        mean_seconds: mean,
        stddev_seconds: std,
        mean_select_seconds: avg(|s| s.select_seconds),
        mean_propagate_seconds: propagate,
        mean_organize_seconds: avg(|s| s.organize_seconds),
        mean_events_seconds: avg(|s| s.events_seconds),
        propagation_share: if mean > 0.0 { propagate / mean } else { 0.0 },
        mean_windows: avg(|s| s.total_windows_created as f64),
        mean_iterations: avg(|s| s.iterations as f64),
        windows_vs_ich: 1.0,
        speedup: None,
        propagation_speedup: None,
    }
}

pub fn run_bench(plan: &BenchPlan) -> Result<BenchReport, CliError> {
    if plan.repetitions == 0 {
        return Err(CliError::Usage("--repetitions must be at least 1".into()));
    }
    if plan.ks.is_empty() || plan.threads.is_empty() {
        return Err(CliError::Usage("need at least one k and one thread count".into()));
    }
    let base = {
        let mut c = EngineConfig::default().with_selection(plan.selection);
        if let Some(e) = plan.epsilon_window {
            c.epsilon_window = e;
        }
        c.seed = plan.seed;
        c
    };
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for (mi, (name, mesh)) in plan.meshes.iter().enumerate() {
        let source_sets = match &plan.fixed_sources {
            Some(s) => vec![s.clone(); plan.repetitions],
            None => draw_sources(mesh.num_vertices(), plan.seed, mi, plan.repetitions),
        };
        let label = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");

        let mut ich_runs = Vec::new();
        for (rep, s) in source_sets.iter().enumerate() {
            let (_, stats) = run_ich_with(mesh, s, base.kernel())?;
            rows.push(BenchRow {
                mesh: name.clone(),
                algo: "ich".into(),
                k: 1,
                threads: 1,
                repetition: rep,
                sources: label(s),
                stats: stats.clone(),
            });
            ich_runs.push(stats);
        }
        let ich = summarize(name, mesh.num_faces(), "ich", 1, 1, plan.selection, &ich_runs);
        eprintln!("{name}: ich {:.3} s, {:.0} windows", ich.mean_seconds, ich.mean_windows);
        let ich_windows = ich.mean_windows;
        summary.push(ich);

        let min_threads = *plan.threads.iter().min().expect("non-empty");
        for &k in &plan.ks {
            let mut reference: Option<(f64, f64)> = None;
            let mut threads = plan.threads.clone();
            threads.sort_unstable();
            threads.dedup();
            for &t in &threads {
                let config = base.clone().with_k(k).with_workers(t);
                let mut runs = Vec::new();
                for (rep, s) in source_sets.iter().enumerate() {
                    let (_, stats) = run_pch(mesh, s, &config)?;
                    rows.push(BenchRow {
                        mesh: name.clone(),
                        algo: "pch".into(),
                        k,
                        threads: t,
                        repetition: rep,
                        sources: label(s),
                        stats: stats.clone(),
                    });
                    runs.push(stats);
                }
                let mut sm = summarize(name, mesh.num_faces(), "pch", k, t, plan.selection, &runs);
                sm.windows_vs_ich = sm.mean_windows / ich_windows;
                if t == min_threads {
                    reference = Some((sm.mean_seconds, sm.mean_propagate_seconds));
                }
                if let Some((total, propagate)) = reference {
                    sm.speedup = Some(total / sm.mean_seconds);
                    sm.propagation_speedup = Some(propagate / sm.mean_propagate_seconds);
                }
                eprintln!(
                    "{name}: pch k={k} T={t} {:.3} ± {:.3} s (select {:.3}, propagate {:.3}, organize {:.3}, events {:.3}; propagation {:.0}%), windows {:.3}x ich, speedup {:.2}",
                    sm.mean_seconds,
                    sm.stddev_seconds,
                    sm.mean_select_seconds,
                    sm.mean_propagate_seconds,
                    sm.mean_organize_seconds,
                    sm.mean_events_seconds,
                    100.0 * sm.propagation_share,
                    sm.windows_vs_ich,
                    sm.speedup.unwrap_or(1.0)
                );
                summary.push(sm);
            }
        }
    }
    Ok(BenchReport {
        schema: geodesic_core::engine::STATS_SCHEMA,
        seed: plan.seed,
        available_threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        summary,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use geodesic_core::shapes;

    #[test]
    fn sources_depend_only_on_seed() {
        assert_eq!(draw_sources(1000, 7, 0, 5), draw_sources(1000, 7, 0, 5));
        assert_ne!(draw_sources(1000, 7, 0, 5), draw_sources(1000, 8, 0, 5));
        assert!(draw_sources(10, 1, 2, 50).iter().all(|s| s[0] < 10));
    }

    #[test]
    fn csv_is_reproducible() {
        let plan = || BenchPlan {
            meshes: vec![("ico2".into(), shapes::icosphere(2))],
            ks: vec![16, 64],
            threads: vec![1, 2],
            selection: SelectionMode::Exact,
            epsilon_window: None,
            seed: 3,
            repetitions: 2,
            fixed_sources: None,
        };
        let a = run_bench(&plan()).unwrap();
        let b = run_bench(&plan()).unwrap();
        let csv = a.to_csv(SelectionMode::Exact);
        assert_eq!(csv, b.to_csv(SelectionMode::Exact));
        // Header, 2 ich rows, 2 k x 2 T x 2 repetitions.
        assert_eq!(csv.lines().count(), 1 + 2 + 8);
        assert_eq!(a.summary.len(), 1 + 4);
        assert!(a.summary.iter().all(|s| s.mean_windows > 0.0));
    }
}
