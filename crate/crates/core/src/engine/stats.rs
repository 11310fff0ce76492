use serde::{Deserialize, Serialize};

use crate::geom::WindowCounters;

/// Version of the JSON layout produced by [`RunStats::to_json`].
pub const STATS_SCHEMA: u32 = 1;

/// Counters and timings for one engine run. Serializes to a flat JSON
/// object; times are in seconds.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub schema: u32,
    pub algorithm: String,
    pub vertices: usize,
    pub faces: usize,
    pub sources: usize,
    pub k: usize,
    pub workers: usize,
    /// Candidate windows, including those dropped right away.
    pub total_windows_created: u64,
    pub total_windows_pruned: u64,
    pub pruned_ich: u64,
    pub pruned_split: u64,
    pub pruned_tiny: u64,
    pub pruned_degenerate: u64,
    pub windows_processed: u64,
    pub iterations: u64,
    pub peak_active_pool: usize,
    pub events_created: u64,
    pub events_applied: u64,
    pub max_children_per_window: usize,
    pub buffer_overflows: u64,
    pub select_seconds: f64,
    pub propagate_seconds: f64,
    pub organize_seconds: f64,
    pub events_seconds: f64,
    pub total_seconds: f64,
}

impl RunStats {
    pub fn new(algorithm: &str) -> Self {
        Self {
            schema: STATS_SCHEMA,
            algorithm: algorithm.to_string(),
            ..Self::default()
        }
    }

    pub(crate) fn absorb(&mut self, c: &WindowCounters) {
        self.total_windows_created += c.created;
        self.pruned_ich += c.ich;
        self.pruned_split += c.split;
        self.pruned_tiny += c.tiny;
        self.pruned_degenerate += c.degenerate;
        self.total_windows_pruned += c.pruned();
    }

    /// Windows that survived filtering and entered the pool.
    pub fn windows_kept(&self) -> u64 {
        self.total_windows_created - self.total_windows_pruned
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("stats serialize")
    }
}
