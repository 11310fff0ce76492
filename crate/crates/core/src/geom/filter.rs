//! The three-inequality window filter.
//!
//! A window on edge `(v0, v1)` created across the triangle `(v0, v1, v2)`
//! from a parent on edge `(v1, v2)` is useless when some vertex already
//! offers a shorter route to the whole interval. Each inequality compares
//! the window at the interval end where the comparison is tightest, so a
//! single evaluation covers every point of the interval.

use crate::geom::EPSILON_NUM;
use crate::planar::Vec2;

/// A candidate window unfolded into the plane of the triangle it was
/// created in. `v0` is the new vertex of that triangle, `v1` the vertex
/// shared with the parent edge and `v2` the other end of the parent edge.
/// `a` is the interval end nearer `v0`, `b` the end nearer `v1`.
#[derive(Clone, Copy, Debug)]
pub struct FilterFrame {
    pub source: Vec2,
    pub d: f64,
    pub a: Vec2,
    pub b: Vec2,
    pub v0: Vec2,
    pub v1: Vec2,
    pub v2: Vec2,
}

/// True when the window should be discarded given current vertex
/// distances `g`. Stale (too large) values only make the test weaker.
pub fn ich_prune(f: &FilterFrame, g: [f64; 3]) -> bool {
    let via_b = f.d + f.source.distance(f.b);
    let via_a = f.d + f.source.distance(f.a);
    beats(via_b, g[0], f.v0.distance(f.b))
        || beats(via_a, g[1], f.v1.distance(f.a))
        || beats(via_b, g[2], f.v2.distance(f.b))
}

#[inline]
fn beats(window_value: f64, g: f64, leg: f64) -> bool {
    let alt = g + leg;
    alt.is_finite() && window_value > alt + EPSILON_NUM * alt.max(1.0)
}
