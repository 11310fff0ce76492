//! Picking the next batch of windows out of the active pool.

use rayon::prelude::*;

use crate::engine::config::SelectionMode;
use crate::geom::KeyedWindow;

/// Removes and returns up to `k` windows from `active`, which stays
/// gap-free. Exact mode partitions the pool in place, so the order of the
/// remaining windows changes (deterministically). Strided mode keeps the
/// remaining windows in order and returns the selection grouped by worker.
pub fn select_nearest(active: &mut Vec<KeyedWindow>, k: usize, mode: SelectionMode, workers: usize) -> Vec<KeyedWindow> {
    let n = active.len();
    if n <= k {
        return std::mem::take(active);
    }
    match mode {
        SelectionMode::Exact => {
            // Descending order puts the k smallest keys at the tail.
            active.select_nth_unstable_by(n - k, |a, b| b.key.total_cmp(&a.key));
            active.split_off(n - k)
        }
        SelectionMode::Strided => {
            let positions = strided_positions(active, k, workers.max(1));
            let mut taken = vec![false; n];
            for &p in &positions {
                taken[p] = true;
            }
            let selected = positions.iter().map(|&p| active[p]).collect();
            let mut i = 0;
            active.retain(|_| {
                let keep = !taken[i];
                i += 1;
                keep
            });
            selected
        }
    }
}

fn strided_positions(active: &[KeyedWindow], k: usize, workers: usize) -> Vec<usize> {
    let quota = k.div_ceil(workers);
    let by_key = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    let per_worker: Vec<Vec<usize>> = (0..workers)
        .into_par_iter()
        .map(|i| {
            let mut keyed: Vec<(f64, usize)> = (i..active.len()).step_by(workers).map(|p| (active[p].key, p)).collect();
            if keyed.len() > quota {
                keyed.select_nth_unstable_by(quota - 1, by_key);
                keyed.truncate(quota);
                keyed.sort_unstable_by_key(|e| e.1);
            }
            keyed.into_iter().map(|e| e.1).collect()
        })
        .collect();
    per_worker.concat()
}
