//! Conflict-free application of deferred updates.

use rayon::slice::ParallelSliceMut;

use crate::engine::field::{AngleSplitTable, DistanceField};
use crate::geom::{AngleEvent, DistanceEvent, SplitEntry};

/// Below this many events a sequential sort is faster.
const PARALLEL_SORT_MIN: usize = 1 << 14;

/// Sorts both event lists by key and then value, and applies the first
/// event of each key when it improves the stored value. Returns the number
/// of events applied.
pub fn apply_events(
    distances: &mut [DistanceEvent],
    angles: &mut [AngleEvent],
    dist: &mut DistanceField,
    split: &mut AngleSplitTable,
) -> usize {
    let dist_order = |a: &DistanceEvent, b: &DistanceEvent| a.vertex.cmp(&b.vertex).then(a.distance.total_cmp(&b.distance));
    let angle_order = |a: &AngleEvent, b: &AngleEvent| {
        a.half_edge
            .cmp(&b.half_edge)
            .then(a.apex_distance.total_cmp(&b.apex_distance))
            .then(a.window_key.total_cmp(&b.window_key))
    };
    if distances.len() >= PARALLEL_SORT_MIN {
        distances.par_sort_by(dist_order);
    } else {
        distances.sort_by(dist_order);
    }
    if angles.len() >= PARALLEL_SORT_MIN {
        angles.par_sort_by(angle_order);
    } else {
        angles.sort_by(angle_order);
    }

    let mut applied = 0;
    let mut last = None;
    for e in distances.iter() {
        if last == Some(e.vertex) {
            continue;
        }
        last = Some(e.vertex);
        let slot = &mut dist[e.vertex as usize];
        if e.distance < *slot {
            *slot = e.distance;
            applied += 1;
        }
    }
    let mut last = None;
    for e in angles.iter() {
        if last == Some(e.half_edge) {
            continue;
        }
        last = Some(e.half_edge);
        let slot = split.slot_mut(e.half_edge as usize);
        if slot.is_none_or(|s| e.apex_distance < s.apex_distance) {
            *slot = Some(SplitEntry {
                window: e.window,
                apex_distance: e.apex_distance,
                window_key: e.window_key,
            });
            applied += 1;
        }
    }
    applied
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Window;

    fn dev(vertex: u32, distance: f64) -> DistanceEvent {
        DistanceEvent { vertex, distance }
    }

    fn aev(apex_distance: f64, window_key: f64) -> AngleEvent {
        AngleEvent {
            half_edge: 2,
            apex_distance,
            window_key,
            window: Window {
                d: window_key,
                ..Window::default()
            },
        }
    }

    #[test]
    fn first_event_per_vertex_wins() {
        let mut dist = DistanceField::from_vec(vec![f64::INFINITY; 8]);
        let mut split = AngleSplitTable::new(3);
        let mut ev = vec![dev(3, 2.0), dev(3, 1.5), dev(7, 0.9)];
        assert_eq!(apply_events(&mut ev, &mut [], &mut dist, &mut split), 2);
        assert_eq!(dist[3], 1.5);
        assert_eq!(dist[7], 0.9);
    }

    #[test]
    fn stale_event_is_not_applied() {
        let mut dist = DistanceField::from_vec(vec![f64::INFINITY; 8]);
        dist[3] = 1.0;
        let mut split = AngleSplitTable::new(3);
        assert_eq!(apply_events(&mut [dev(3, 1.5)], &mut [], &mut dist, &mut split), 0);
        assert_eq!(dist[3], 1.0);
    }

    #[test]
    fn angle_events_keep_the_nearer_window() {
        let mut dist = DistanceField::from_vec(vec![]);
        let mut split = AngleSplitTable::new(3);
        let mut ev = vec![aev(5.0, 4.2), aev(5.0, 3.7)];
        assert_eq!(apply_events(&mut [], &mut ev, &mut dist, &mut split), 1);
        assert_eq!(split.get(2).unwrap().window_key, 3.7);
        let mut worse = vec![aev(6.0, 1.0)];
        assert_eq!(apply_events(&mut [], &mut worse, &mut dist, &mut split), 0);
    }
}
