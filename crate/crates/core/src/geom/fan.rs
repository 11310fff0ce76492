//! Windows emitted from a vertex acting as a pseudo source: the initial
//! windows around a source, and the fan of windows behind a saddle (or
//! reflex boundary) vertex that a geodesic passes through.
//!
//! Directions around a vertex are measured as ring angles: the angular
//! position in the counter-clockwise ring of incident corners, in
//! `[0, total_angle)`. A geodesic entering `v` from ring angle `φ` may
//! continue in any direction at least π away from `φ` on both sides.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geom::filter::FilterFrame;
use crate::geom::propagate::{PropagationContext, PropagationSink};
use crate::geom::{ich_prune, Window};
use crate::mesh::{next_half_edge, prev_half_edge, SurfaceMesh};
use crate::planar::{place_apex, ray_segment_param, Vec2};

/// How far a saddle fan reaches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FanMode {
    /// Clip the fan to the directions a geodesic may continue in.
    #[default]
    Clipped,
    /// Emit full-edge windows on every edge around the vertex and let the
    /// filters remove the useless ones.
    Full,
}

/// Ring-angle intervals, each within `[0, total_angle]`, covered by the fan
/// of a geodesic arriving at `v` from ring angle `incoming`.
pub fn fan_spans(mesh: &SurfaceMesh, v: usize, incoming: f64, mode: FanMode) -> Vec<(f64, f64)> {
    let total = mesh.total_angle(v);
    if mode == FanMode::Full {
        return vec![(0.0, total)];
    }
    let mut spans = Vec::with_capacity(2);
    if mesh.is_boundary_vertex(v) {
        if incoming - PI > 0.0 {
            spans.push((0.0, incoming - PI));
        }
        if incoming + PI < total {
            spans.push((incoming + PI, total));
        }
    } else {
        let width = total - 2.0 * PI;
        if width <= 0.0 {
            return spans;
        }
        let start = (incoming + PI).rem_euclid(total);
        let end = start + width;
        if end <= total {
            spans.push((start, end));
        } else {
            spans.push((start, total));
            spans.push((0.0, end - total));
        }
    }
    spans
}

/// Emits windows with pseudo source `v` (at distance `dist_v`) on every
/// edge opposite `v` whose angular extent meets one of `spans`, clipped to
/// the spans. With `filter` set each window is checked against the current
/// distances at its two endpoints. Returns the number of windows emitted.
pub fn create_fan_windows<S: PropagationSink>(
    ctx: &PropagationContext<'_>,
    v: usize,
    dist_v: f64,
    spans: &[(f64, f64)],
    filter: bool,
    sink: &mut S,
) -> usize {
    let mesh = ctx.mesh;
    let mut emitted = 0;
    for o in mesh.ring(v) {
        let lo = mesh.ring_angle(o);
        let alpha = mesh.corner_angle(o);
        for &(s, e) in spans {
            let s = (s - lo).max(0.0);
            let e = (e - lo).min(alpha);
            if e > s {
                emitted += usize::from(emit_corner_window(ctx, o, dist_v, s, e, alpha, filter, sink));
            }
        }
    }
    emitted
}

/// Initial windows around a source: one full window per incident face.
pub fn create_source_windows<S: PropagationSink>(ctx: &PropagationContext<'_>, s: usize, sink: &mut S) -> usize {
    let mesh = ctx.mesh;
    let mut emitted = 0;
    for o in mesh.ring(s) {
        let alpha = mesh.corner_angle(o);
        emitted += usize::from(emit_corner_window(ctx, o, 0.0, 0.0, alpha, alpha, false, sink));
    }
    emitted
}

/// Window on the edge opposite the origin of `o` (inside the face of `o`)
/// lit by directions `[s, e]` measured from `o`'s direction.
#[allow(clippy::too_many_arguments)]
fn emit_corner_window<S: PropagationSink>(
    ctx: &PropagationContext<'_>,
    o: usize,
    dist_v: f64,
    s: f64,
    e: f64,
    alpha: f64,
    filter: bool,
    sink: &mut S,
) -> bool {
    let mesh = ctx.mesh;
    let far = next_half_edge(o);
    let back = prev_half_edge(o);
    let base = mesh.length(o);
    let far_len = mesh.length(far);
    let w = Vec2::new(base, 0.0);
    let u = place_apex(base, mesh.length(back), far_len);

    let hit = |theta: f64| -> f64 {
        if theta <= 0.0 {
            return 0.0;
        }
        if theta >= alpha {
            return 1.0;
        }
        ray_segment_param(Vec2::ZERO, Vec2::from_angle(theta), w, u)
            .unwrap_or(if theta < 0.5 * alpha { 0.0 } else { 1.0 })
            .clamp(0.0, 1.0)
    };
    let (mu0, mu1) = (hit(s), hit(e));
    let b0 = mu0 * far_len;
    let b1 = if mu1 >= 1.0 { far_len } else { mu1 * far_len };

    sink.counters().created += 1;
    if b1 - b0 <= ctx.params.epsilon_window * far_len {
        sink.counters().tiny += 1;
        return false;
    }
    let a = w.lerp(u, mu0);
    let b = w.lerp(u, mu1);
    // Exact lengths at full-edge ends keep source windows bit-exact.
    let d0 = if mu0 == 0.0 { base } else { a.norm() };
    let d1 = if mu1 >= 1.0 { mesh.length(back) } else { b.norm() };

    if filter {
        let gw = ctx.dist[mesh.origin(far)];
        let gu = ctx.dist[mesh.origin(back)];
        let frame = FilterFrame {
            source: Vec2::ZERO,
            d: dist_v,
            a,
            b,
            v0: w,
            v1: u,
            v2: Vec2::ZERO,
        };
        if ich_prune(&frame, [gw, gu, f64::INFINITY]) {
            sink.counters().ich += 1;
            return false;
        }
    }

    sink.emit_window(Window {
        half_edge: far as u32,
        b0,
        b1,
        d0,
        d1,
        d: dist_v,
    });
    true
}
