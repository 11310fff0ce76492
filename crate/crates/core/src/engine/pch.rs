//! Batched parallel window propagation.
//!
//! Each round has four phases with no shared writes inside a phase:
//! select the `k` nearest windows, propagate them on `T` workers into
//! private buffers, pack the buffers back into the pool and the event
//! arrays, then apply the sorted events.

use std::time::Instant;

use rayon::prelude::*;

use crate::engine::config::EngineConfig;
use crate::engine::events::apply_events;
use crate::engine::field::{AngleSplitTable, DistanceField};
use crate::engine::pool::{reorganize, WindowPool, WorkerOutput};
use crate::engine::select::select_nearest;
use crate::engine::stats::RunStats;
use crate::error::EngineError;
use crate::geom::{create_source_windows, propagate_window, AngleEvent, DistanceEvent, KeyedWindow, PropagationContext};
use crate::mesh::SurfaceMesh;

pub fn run_pch(mesh: &SurfaceMesh, sources: &[usize], config: &EngineConfig) -> Result<(DistanceField, RunStats), EngineError> {
    config.validate()?;
    let mut dist = DistanceField::with_sources(mesh.num_vertices(), sources)?;
    let threads = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| EngineError::ThreadPool(e.to_string()))?;
    threads.install(|| Engine::new(mesh, config).run(sources, &mut dist))
        .map(|stats| (dist, stats))
}

struct Engine<'a> {
    mesh: &'a SurfaceMesh,
    config: &'a EngineConfig,
    split: AngleSplitTable,
    pool: WindowPool,
    outputs: Vec<WorkerOutput>,
    distance_events: Vec<DistanceEvent>,
    angle_events: Vec<AngleEvent>,
    stats: RunStats,
}

impl<'a> Engine<'a> {
    fn new(mesh: &'a SurfaceMesh, config: &'a EngineConfig) -> Self {
        let t = config.workers;
        let capacity = 4 * config.k.div_ceil(t);
        let mut stats = RunStats::new("pch");
        stats.vertices = mesh.num_vertices();
        stats.faces = mesh.num_faces();
        stats.k = config.k;
        stats.workers = t;
        Self {
            mesh,
            config,
            split: AngleSplitTable::new(mesh.num_half_edges()),
            pool: WindowPool::default(),
            outputs: (0..t).map(|_| WorkerOutput::with_capacity(capacity)).collect(),
            distance_events: Vec::new(),
            angle_events: Vec::new(),
            stats,
        }
    }

    fn run(mut self, sources: &[usize], dist: &mut DistanceField) -> Result<RunStats, EngineError> {
        let start = Instant::now();
        self.stats.sources = sources.len();

        {
            let ctx = PropagationContext {
                mesh: self.mesh,
                dist,
                split: self.split.entries(),
                params: self.config.kernel(),
            };
            let t = self.outputs.len();
            let per = sources.len().div_ceil(t);
            self.outputs.par_iter_mut().zip(sources.par_chunks(per)).for_each(|(out, chunk)| {
                for &s in chunk {
                    create_source_windows(&ctx, s, out);
                }
            });
        }
        self.pool.refill(&mut self.outputs);
        self.stats.peak_active_pool = self.pool.len();

        while !self.pool.is_empty() {
            if let Some(cap) = self.config.max_iterations {
                if self.stats.iterations as usize >= cap {
                    return Err(EngineError::IterationCap(cap));
                }
            }
            self.stats.iterations += 1;

            let t0 = Instant::now();
            let selected = select_nearest(&mut self.pool.active, self.config.k, self.config.selection, self.config.workers);
            let t1 = Instant::now();
            self.propagate_batch(&selected, dist);
            let t2 = Instant::now();
            self.pool.refill(&mut self.outputs);
            self.distance_events.clear();
            self.angle_events.clear();
            reorganize(&mut self.distance_events, &mut self.outputs);
            reorganize(&mut self.angle_events, &mut self.outputs);
            let t3 = Instant::now();
            let created = self.distance_events.len() + self.angle_events.len();
            let applied = apply_events(&mut self.distance_events, &mut self.angle_events, dist, &mut self.split);
            let t4 = Instant::now();

            self.stats.windows_processed += selected.len() as u64;
            self.stats.events_created += created as u64;
            self.stats.events_applied += applied as u64;
            self.stats.peak_active_pool = self.stats.peak_active_pool.max(self.pool.len());
            self.stats.select_seconds += (t1 - t0).as_secs_f64();
            self.stats.propagate_seconds += (t2 - t1).as_secs_f64();
            self.stats.organize_seconds += (t3 - t2).as_secs_f64();
            self.stats.events_seconds += (t4 - t3).as_secs_f64();
        }

        for out in &self.outputs {
            self.stats.absorb(&out.counters);
            self.stats.max_children_per_window = self.stats.max_children_per_window.max(out.max_children);
            self.stats.buffer_overflows += out.overflows();
        }
        self.stats.total_seconds = start.elapsed().as_secs_f64();
        Ok(self.stats)
    }

    /// Splits `selected` into `T` contiguous shares, one per worker.
    fn propagate_batch(&mut self, selected: &[KeyedWindow], dist: &DistanceField) {
        let ctx = PropagationContext {
            mesh: self.mesh,
            dist,
            split: self.split.entries(),
            params: self.config.kernel(),
        };
        let per = selected.len().div_ceil(self.outputs.len()).max(1);
        self.outputs.par_iter_mut().zip(selected.par_chunks(per)).for_each(|(out, share)| {
            for kw in share {
                let n = propagate_window(&ctx, &kw.window, out);
                out.max_children = out.max_children.max(n);
            }
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::config::SelectionMode;
    use crate::shapes;

    fn cfg(k: usize, t: usize) -> EngineConfig {
        EngineConfig::default().with_k(k).with_workers(t)
    }

    #[test]
    fn single_triangle() {
        let (d, stats) = run_pch(&shapes::single_triangle(), &[0], &cfg(16, 4)).unwrap();
        assert_eq!(d.values(), &[0.0, 1.0, 1.0]);
        assert_eq!(stats.windows_kept(), stats.windows_processed);
    }

    #[test]
    fn cube_corner_distances() {
        let (d, _) = run_pch(&shapes::cube(), &[0], &cfg(4, 2)).unwrap();
        let s2 = 2f64.sqrt();
        let expected = [0.0, 1.0, 1.0, s2, 1.0, s2, s2, 5f64.sqrt()];
        for v in 0..8 {
            assert!((d[v] - expected[v]).abs() < 1e-12, "vertex {v}: {}", d[v]);
        }
    }

    #[test]
    fn k_and_threads_do_not_change_the_field() {
        let mesh = shapes::bumpy_sphere(2, 0.2);
        let (a, _) = run_pch(&mesh, &[5], &cfg(1, 1)).unwrap();
        for (k, t, mode) in [(16384, 8, SelectionMode::Exact), (7, 3, SelectionMode::Strided)] {
            let (b, _) = run_pch(&mesh, &[5], &cfg(k, t).with_selection(mode)).unwrap();
            for v in 0..mesh.num_vertices() {
                assert!((a[v] - b[v]).abs() <= 1e-9 * a[v].max(1e-3), "vertex {v}: {} vs {}", a[v], b[v]);
            }
        }
    }

    #[test]
    fn iteration_cap_trips() {
        let c = EngineConfig {
            max_iterations: Some(1),
            ..cfg(1, 1)
        };
        assert!(matches!(run_pch(&shapes::icosphere(1), &[0], &c), Err(EngineError::IterationCap(1))));
    }
}
