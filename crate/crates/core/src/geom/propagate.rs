//! Propagation of one window across the face beyond its half-edge.
//!
//! Frame: the origin `v0` of the window's half-edge at `(0, 0)`, its
//! target `v1` at `(L, 0)`, the pseudo source `I` above the axis and the
//! apex `v2` of the next face below it. Rays from `I` through the
//! interval either all reach one of the two far edges, or are split by
//! the ray through `v2`.

use crate::geom::fan::{create_fan_windows, fan_spans, FanMode};
use crate::geom::filter::{ich_prune, FilterFrame};
use crate::geom::window::{unfold_pseudo_source, window_key};
use crate::geom::{AngleEvent, DistanceEvent, SplitEntry, Window, EPSILON_WINDOW};
use crate::mesh::{next_half_edge, prev_half_edge, SurfaceMesh};
use crate::planar::{place_apex, ray_segment_param, Vec2};

/// Relative tolerance for snapping the split ray onto an interval end and
/// for treating a pseudo source as lying on its edge.
const SNAP_REL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelParams {
    pub epsilon_window: f64,
    pub fan_mode: FanMode,
}

impl Default for KernelParams {
    fn default() -> Self {
        Self {
            epsilon_window: EPSILON_WINDOW,
            fan_mode: FanMode::Clipped,
        }
    }
}

/// Read-only state shared by all propagations in a batch.
#[derive(Clone, Copy)]
pub struct PropagationContext<'a> {
    pub mesh: &'a SurfaceMesh,
    pub dist: &'a [f64],
    pub split: &'a [Option<SplitEntry>],
    pub params: KernelParams,
}

/// Candidate accounting. Every candidate window is counted in `created`;
/// the other fields count the candidates dropped for each reason.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WindowCounters {
    pub created: u64,
    pub ich: u64,
    pub split: u64,
    pub tiny: u64,
    pub degenerate: u64,
}

impl WindowCounters {
    pub fn pruned(&self) -> u64 {
        self.ich + self.split + self.tiny + self.degenerate
    }

    pub fn add(&mut self, o: &WindowCounters) {
        self.created += o.created;
        self.ich += o.ich;
        self.split += o.split;
        self.tiny += o.tiny;
        self.degenerate += o.degenerate;
    }
}

/// Destination for everything a propagation produces.
pub trait PropagationSink {
    fn emit_window(&mut self, w: Window);
    fn emit_distance(&mut self, e: DistanceEvent);
    fn emit_angle(&mut self, e: AngleEvent);
    fn counters(&mut self) -> &mut WindowCounters;
}

/// Propagates `w` one face further. Returns the number of windows emitted
/// (children plus fan windows).
pub fn propagate_window<S: PropagationSink>(ctx: &PropagationContext<'_>, w: &Window, sink: &mut S) -> usize {
    let mesh = ctx.mesh;
    let h = w.half_edge as usize;
    let len = mesh.length(h);
    let v0 = mesh.origin(h);
    let v1 = mesh.target(h);
    let eps_w = ctx.params.epsilon_window * len;

    let src = match unfold_pseudo_source(w) {
        Ok(p) => p,
        Err(_) => {
            sink.counters().degenerate += 1;
            return 0;
        }
    };
    let mut emitted = 0;

    // Interval ends at the half-edge's vertices. `d0 + b0` is the length of
    // a real path (pseudo source, interval start, vertex), so a start that
    // is merely close to the vertex still gives a valid upper bound.
    if w.b0 <= eps_w {
        let cand = w.d + w.d0 + w.b0;
        if cand < ctx.dist[v0] {
            sink.emit_distance(DistanceEvent {
                vertex: v0 as u32,
                distance: cand,
            });
            if mesh.is_fan_vertex(v0) {
                let a = mesh.corner_angle(h);
                let incoming = mesh.ring_angle(h) + src.y.atan2(src.x).clamp(0.0, a);
                emitted += fan_from(ctx, v0, cand, incoming, sink);
            }
        }
    }
    if w.b1 >= len - eps_w {
        let cand = w.d + w.d1 + (len - w.b1).max(0.0);
        if cand < ctx.dist[v1] {
            sink.emit_distance(DistanceEvent {
                vertex: v1 as u32,
                distance: cand,
            });
            if mesh.is_fan_vertex(v1) {
                let n = next_half_edge(h);
                let a = mesh.corner_angle(n);
                let incoming = mesh.ring_angle(n) + a - src.y.atan2(len - src.x).clamp(0.0, a);
                emitted += fan_from(ctx, v1, cand, incoming, sink);
            }
        }
    }

    let Some(g) = mesh.opposite(h) else {
        return emitted;
    };
    if src.y <= SNAP_REL * len {
        sink.counters().degenerate += 1;
        return emitted;
    }

    let left = next_half_edge(g); // v0 -> v2
    let right = prev_half_edge(g); // v2 -> v1
    let v2 = mesh.target(left);
    let apex = {
        let p = place_apex(len, mesh.length(left), mesh.length(right));
        Vec2::new(p.x, -p.y)
    };
    let p0 = Vec2::ZERO;
    let p1 = Vec2::new(len, 0.0);

    let mut c = axis_crossing(src, apex);
    if (c - w.b0).abs() <= SNAP_REL * len {
        c = w.b0;
    }
    if (c - w.b1).abs() <= SNAP_REL * len {
        c = w.b1;
    }

    // Ranges of the interval sent to the left and right far edges.
    let mut left_range = None;
    let mut right_range = None;
    if c <= w.b0 {
        right_range = Some((w.b0, w.b1));
    } else if c >= w.b1 {
        left_range = Some((w.b0, w.b1));
    } else {
        let apex_distance = w.d + src.distance(apex);
        let key = window_key(w);
        let incumbent = ctx.split[h];
        match incumbent {
            Some(e) if apex_distance >= e.apex_distance => {
                // Another window reaches v2 no later. Rays that cross its
                // path to v2 are dominated by it, so drop them.
                let c2 = match unfold_pseudo_source(&e.window) {
                    Ok(p) if p.y > 0.0 => axis_crossing(p, apex),
                    _ => c,
                };
                let (lc, rc) = (c.min(c2), c.max(c2));
                if lc > w.b0 {
                    left_range = Some((w.b0, lc));
                } else {
                    sink.counters().created += 1;
                    sink.counters().split += 1;
                }
                if rc < w.b1 {
                    right_range = Some((rc, w.b1));
                } else {
                    sink.counters().created += 1;
                    sink.counters().split += 1;
                }
            }
            _ => {
                sink.emit_angle(AngleEvent {
                    half_edge: h as u32,
                    apex_distance,
                    window_key: key,
                    window: *w,
                });
                left_range = Some((w.b0, c));
                right_range = Some((c, w.b1));
            }
        }
        if apex_distance < ctx.dist[v2] {
            sink.emit_distance(DistanceEvent {
                vertex: v2 as u32,
                distance: apex_distance,
            });
            if mesh.is_fan_vertex(v2) {
                let a = mesh.corner_angle(right);
                let turn = (p1 - apex).angle_to(src - apex).clamp(0.0, a);
                emitted += fan_from(ctx, v2, apex_distance, mesh.ring_angle(right) + turn, sink);
            }
        }
    }

    let g_at = |v: usize| ctx.dist[v];
    if let Some((t0, t1)) = left_range {
        let child = Child {
            half_edge: left,
            start: p0,
            end: apex,
            start_at: 0.0,
            end_at: c,
        };
        // Shared vertex v0, new vertex v2, other parent vertex v1.
        let g = [g_at(v2), g_at(v0), g_at(v1)];
        if emit_child(ctx, w, src, &child, (t0, t1), apex, p0, p1, g, false, sink) {
            emitted += 1;
        }
    }
    if let Some((t0, t1)) = right_range {
        let child = Child {
            half_edge: right,
            start: apex,
            end: p1,
            start_at: c,
            end_at: len,
        };
        let g = [g_at(v2), g_at(v1), g_at(v0)];
        if emit_child(ctx, w, src, &child, (t0, t1), apex, p1, p0, g, true, sink) {
            emitted += 1;
        }
    }
    emitted
}

fn fan_from<S: PropagationSink>(ctx: &PropagationContext<'_>, v: usize, dist: f64, incoming: f64, sink: &mut S) -> usize {
    let spans = fan_spans(ctx.mesh, v, incoming, ctx.params.fan_mode);
    let filter = ctx.params.fan_mode == FanMode::Clipped;
    create_fan_windows(ctx, v, dist, &spans, filter, sink)
}

/// x where the line through `a` and `b` (on opposite sides of the axis)
/// crosses the axis.
#[inline]
fn axis_crossing(a: Vec2, b: Vec2) -> f64 {
    a.x + (b.x - a.x) * (a.y / (a.y - b.y))
}

/// A far edge in the parent frame. Rays through the parent interval at
/// `start_at` and `end_at` hit the child edge exactly at its two ends.
struct Child {
    half_edge: usize,
    start: Vec2,
    end: Vec2,
    start_at: f64,
    end_at: f64,
}

impl Child {
    fn hit(&self, src: Vec2, t: f64) -> f64 {
        if t == self.start_at {
            return 0.0;
        }
        if t == self.end_at {
            return 1.0;
        }
        ray_segment_param(src, Vec2::new(t, 0.0) - src, self.start, self.end)
            .unwrap_or(0.0)
            .clamp(0.0, 1.0)
    }
}

/// Builds, filters and emits the child of `w` on `child` lit through the
/// parent range `[t0, t1]`. `shared` is the parent vertex on the child
/// edge, `other` the remaining parent vertex; `g` holds current distances
/// at (new vertex, shared vertex, other vertex). `shared_at_end` tells
/// whether `shared` is the target of the child half-edge.
#[allow(clippy::too_many_arguments)]
fn emit_child<S: PropagationSink>(
    ctx: &PropagationContext<'_>,
    w: &Window,
    src: Vec2,
    child: &Child,
    (t0, t1): (f64, f64),
    apex: Vec2,
    shared: Vec2,
    other: Vec2,
    g: [f64; 3],
    shared_at_end: bool,
    sink: &mut S,
) -> bool {
    sink.counters().created += 1;
    let len = ctx.mesh.length(child.half_edge);
    let mu0 = child.hit(src, t0);
    let mu1 = child.hit(src, t1);
    let b0 = mu0 * len;
    let b1 = if mu1 >= 1.0 { len } else { mu1 * len };
    if !(b1 - b0 > ctx.params.epsilon_window * len) {
        sink.counters().tiny += 1;
        return false;
    }
    let a = child.start.lerp(child.end, mu0);
    let b = child.start.lerp(child.end, mu1);
    let (near_new, near_shared) = if shared_at_end { (a, b) } else { (b, a) };
    let frame = FilterFrame {
        source: src,
        d: w.d,
        a: near_new,
        b: near_shared,
        v0: apex,
        v1: shared,
        v2: other,
    };
    if ich_prune(&frame, g) {
        sink.counters().ich += 1;
        return false;
    }
    sink.emit_window(Window {
        half_edge: child.half_edge as u32,
        b0,
        b1,
        d0: src.distance(a),
        d1: src.distance(b),
        d: w.d,
    });
    true
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    #[derive(Default)]
    pub struct Collect {
        pub windows: Vec<Window>,
        pub distances: Vec<DistanceEvent>,
        pub angles: Vec<AngleEvent>,
        pub counters: WindowCounters,
    }

    impl PropagationSink for Collect {
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

    pub struct Fixture<'a> {
        pub mesh: &'a SurfaceMesh,
        pub dist: Vec<f64>,
        pub split: Vec<Option<SplitEntry>>,
    }

    impl<'a> Fixture<'a> {
        pub fn new(mesh: &'a SurfaceMesh) -> Self {
            Self {
                mesh,
                dist: vec![f64::INFINITY; mesh.num_vertices()],
                split: vec![None; mesh.num_half_edges()],
            }
        }

        pub fn ctx(&self) -> PropagationContext<'_> {
            PropagationContext {
                mesh: self.mesh,
                dist: &self.dist,
                split: &self.split,
                params: KernelParams::default(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::{Collect, Fixture};
    use super::*;
    use crate::geom::create_source_windows;
    use crate::shapes;

    fn half_edge_between(mesh: &SurfaceMesh, a: usize, b: usize) -> usize {
        (0..mesh.num_half_edges())
            .find(|&j| mesh.origin(j) == a && mesh.target(j) == b)
            .unwrap()
    }

    /// Euclidean distance, in 3D, from `p` to the point at arc length `s`
    /// along half-edge `h`.
    fn point_on(mesh: &SurfaceMesh, h: usize, s: f64) -> [f64; 3] {
        let (a, b) = (mesh.position(mesh.origin(h)), mesh.position(mesh.target(h)));
        let t = s / mesh.length(h);
        [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), a[2] + t * (b[2] - a[2])]
    }

    #[test]
    fn lone_triangle_source_window_reaches_both_ends() {
        let mesh = shapes::single_triangle();
        let mut fx = Fixture::new(&mesh);
        fx.dist[0] = 0.0;
        let mut init = Collect::default();
        create_source_windows(&fx.ctx(), 0, &mut init);
        let mut out = Collect::default();
        let n = propagate_window(&fx.ctx(), &init.windows[0], &mut out);
        assert_eq!(n, 0);
        let mut d: Vec<(u32, f64)> = out.distances.iter().map(|e| (e.vertex, e.distance)).collect();
        d.sort_by_key(|e| e.0);
        assert_eq!(d, vec![(1, 1.0), (2, 1.0)]);
    }

    #[test]
    fn square_far_corner_from_diagonal_window() {
        // Source at a corner the diagonal does not touch: its window lies on
        // the diagonal and the apex beyond is the far corner.
        let mesh = shapes::unit_square();
        let h = (0..mesh.num_half_edges())
            .find(|&j| mesh.opposite(j).is_some() && {
                let p = mesh.position(mesh.origin(prev_half_edge(j)));
                p == [0.0, 0.0, 0.0] || p == [1.0, 0.0, 0.0]
            })
            .unwrap();
        let s = mesh.origin(prev_half_edge(h));
        let mut fx = Fixture::new(&mesh);
        fx.dist[s] = 0.0;
        let w = Window {
            half_edge: h as u32,
            b0: 0.0,
            b1: mesh.length(h),
            d0: mesh.length(prev_half_edge(h)),
            d1: mesh.length(next_half_edge(h)),
            d: 0.0,
        };
        let mut out = Collect::default();
        assert_eq!(propagate_window(&fx.ctx(), &w, &mut out), 2);
        assert_eq!(out.angles.len(), 1);
        let apex = mesh.target(next_half_edge(mesh.opposite(h).unwrap()));
        let e = out.distances.iter().find(|e| e.vertex as usize == apex).unwrap();
        assert!((e.distance - 2f64.sqrt()).abs() < 1e-15);
        let origin = mesh.position(s);
        for c in &out.windows {
            let hc = c.half_edge as usize;
            let ea = crate::mesh::distance3(origin, point_on(&mesh, hc, c.b0));
            let eb = crate::mesh::distance3(origin, point_on(&mesh, hc, c.b1));
            assert!((c.d0 - ea).abs() < 1e-14 && (c.d1 - eb).abs() < 1e-14);
        }
    }

    #[test]
    fn narrow_cone_gives_one_child_inside_edge() {
        // Flat strip; a narrow window in the middle of an edge whose rays
        // all land on one far edge.
        let mesh = shapes::planar_grid(2, 1, 1.0);
        let h = half_edge_between(&mesh, 1, 4);
        assert!(mesh.opposite(h).is_some());
        // Pseudo source straight above the interval.
        let w = Window {
            half_edge: h as u32,
            b0: 0.45,
            b1: 0.55,
            d0: 0.0,
            d1: 0.0,
            d: 0.25,
        };
        let src = Vec2::new(0.45, 2.0);
        let w = Window {
            d0: src.distance(Vec2::new(w.b0, 0.0)),
            d1: src.distance(Vec2::new(w.b1, 0.0)),
            ..w
        };
        let fx = Fixture::new(&mesh);
        let mut out = Collect::default();
        assert_eq!(propagate_window(&fx.ctx(), &w, &mut out), 1);
        assert!(out.angles.is_empty() && out.distances.is_empty());
        let c = out.windows[0];
        let l = mesh.length(c.half_edge as usize);
        assert!(c.b0 > 0.0 && c.b1 < l && c.b1 > c.b0);
    }

    #[test]
    fn losing_window_keeps_only_the_uncovered_side() {
        let mesh = shapes::planar_grid(2, 1, 1.0);
        let h = half_edge_between(&mesh, 1, 4);
        let g = mesh.opposite(h).unwrap();
        let make = |sx: f64, sy: f64, b0: f64, d: f64| {
            let src = Vec2::new(sx, sy);
            Window {
                half_edge: h as u32,
                b0,
                b1: 1.0,
                d0: src.distance(Vec2::new(b0, 0.0)),
                d1: src.distance(Vec2::new(1.0, 0.0)),
                d,
            }
        };
        // The incumbent's ray to the apex crosses the edge at 0.25, left of
        // the candidate's interval; the candidate's own split ray is at 2/3.
        let incumbent = make(0.5, 1.0, 0.0, 0.0);
        let candidate = make(1.2, 0.8, 0.3, 0.5);
        let mut fx = Fixture::new(&mesh);
        let apex = Vec2::new(
            place_apex(1.0, mesh.length(next_half_edge(g)), mesh.length(prev_half_edge(g))).x,
            -place_apex(1.0, mesh.length(next_half_edge(g)), mesh.length(prev_half_edge(g))).y,
        );
        let inc_src = unfold_pseudo_source(&incumbent).unwrap();
        fx.split[h] = Some(SplitEntry {
            window: incumbent,
            apex_distance: inc_src.distance(apex),
            window_key: window_key(&incumbent),
        });
        let mut out = Collect::default();
        let n = propagate_window(&fx.ctx(), &candidate, &mut out);
        assert!(out.angles.is_empty());
        assert_eq!(n, 1, "{:?}", out.windows);
        assert_eq!(out.counters.split, 1);
    }

    #[test]
    fn children_keys_do_not_decrease() {
        let mesh = shapes::bumpy_sphere(2, 0.2);
        let fx = Fixture::new(&mesh);
        let mut init = Collect::default();
        create_source_windows(&fx.ctx(), 3, &mut init);
        let mut frontier = init.windows;
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &frontier {
                let mut out = Collect::default();
                propagate_window(&fx.ctx(), w, &mut out);
                let k = window_key(w);
                for c in &out.windows {
                    if c.d == w.d {
                        assert!(window_key(c) >= k - 1e-9);
                    }
                }
                next.extend(out.windows);
            }
            frontier = next;
        }
    }
}
