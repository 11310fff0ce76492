//! Sequential reference engine: one window at a time from a priority queue,
//! updates applied immediately.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::time::Instant;

use crate::engine::events::apply_events;
use crate::engine::field::{AngleSplitTable, DistanceField};
use crate::engine::stats::RunStats;
use crate::error::EngineError;
use crate::geom::{
    create_source_windows, propagate_window, AngleEvent, DistanceEvent, KernelParams, PropagationContext,
    PropagationSink, Window, WindowCounters,
};
use crate::mesh::SurfaceMesh;

struct Entry {
    key: f64,
    seq: u64,
    window: Window,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Reversed so the max-heap pops the smallest key first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.key.total_cmp(&self.key).then(other.seq.cmp(&self.seq))
    }
}

#[derive(Default)]
struct Scratch {
    windows: Vec<Window>,
    distances: Vec<DistanceEvent>,
    angles: Vec<AngleEvent>,
    counters: WindowCounters,
}

impl PropagationSink for Scratch {
    fn emit_window(&mut self, w: Window) {
        self.windows.push(w);
    }
    fn emit_distance(&mut self, e: DistanceEvent) {
        self.distances.push(e);
    }
    fn emit_angle(&mut self, e: AngleEvent) {
        self.angles.push(e);
    }
    fn counters(&mut self) -> &mut WindowCounters {
        &mut self.counters
    }
}

pub fn run_ich(mesh: &SurfaceMesh, sources: &[usize]) -> Result<(DistanceField, RunStats), EngineError> {
    run_ich_with(mesh, sources, KernelParams::default())
}

pub fn run_ich_with(
    mesh: &SurfaceMesh,
    sources: &[usize],
    params: KernelParams,
) -> Result<(DistanceField, RunStats), EngineError> {
    let start = Instant::now();
    let mut dist = DistanceField::with_sources(mesh.num_vertices(), sources)?;
    let mut split = AngleSplitTable::new(mesh.num_half_edges());
    let mut stats = RunStats::new("ich");
    stats.vertices = mesh.num_vertices();
    stats.faces = mesh.num_faces();
    stats.sources = sources.len();
    stats.workers = 1;
    stats.k = 1;

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut scratch = Scratch::default();
    {
        let ctx = PropagationContext {
            mesh,
            dist: &dist,
            split: split.entries(),
            params,
        };
        for &s in sources {
            create_source_windows(&ctx, s, &mut scratch);
        }
    }
    let mut push_all = |heap: &mut BinaryHeap<Entry>, windows: &mut Vec<Window>| {
        for w in windows.drain(..) {
            heap.push(Entry {
                key: crate::geom::window_key(&w),
                seq,
                window: w,
            });
            seq += 1;
        }
    };
    push_all(&mut heap, &mut scratch.windows);
    stats.peak_active_pool = heap.len();

    while let Some(Entry { window, .. }) = heap.pop() {
        let ctx = PropagationContext {
            mesh,
            dist: &dist,
            split: split.entries(),
            params,
        };
        let n = propagate_window(&ctx, &window, &mut scratch);
        stats.max_children_per_window = stats.max_children_per_window.max(n);
        stats.windows_processed += 1;
        stats.iterations += 1;
        stats.events_created += (scratch.distances.len() + scratch.angles.len()) as u64;
        stats.events_applied += apply_events(&mut scratch.distances, &mut scratch.angles, &mut dist, &mut split) as u64;
        scratch.distances.clear();
        scratch.angles.clear();
        push_all(&mut heap, &mut scratch.windows);
        stats.peak_active_pool = stats.peak_active_pool.max(heap.len());
    }

    stats.absorb(&scratch.counters);
    stats.total_seconds = start.elapsed().as_secs_f64();
    stats.propagate_seconds = stats.total_seconds;
    Ok((dist, stats))
}
