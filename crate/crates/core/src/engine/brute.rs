//! Exhaustive unfolding oracle for tiny meshes.
//!
//! For every vertex `p`, every simple sequence of faces leaving `p` is
//! unfolded into the plane while tracking the cone of straight lines from
//! `p` that stay inside the unfolded strip. Each vertex that falls inside
//! the cone is visible from `p` at its straight-line distance. A shortest
//! path is a chain of such straight segments between vertices, so
//! Dijkstra over the visibility graph gives the exact geodesic distances.

use crate::engine::dijkstra::dijkstra;
use crate::engine::field::{check_sources, DistanceField};
use crate::error::EngineError;
use crate::mesh::{face_of, next_half_edge, prev_half_edge, SurfaceMesh};
use crate::planar::{place_apex, Vec2};

/// Largest mesh the oracle accepts.
pub const BRUTE_FORCE_FACE_LIMIT: usize = 200;

/// Relative slack on cone membership.
const CONE_TOL: f64 = 1e-12;

/// `max_sequence` bounds the number of faces in one unfolded strip; the
/// face count of the mesh is always enough.
pub fn brute_force_geodesic(mesh: &SurfaceMesh, sources: &[usize], max_sequence: usize) -> Result<DistanceField, EngineError> {
    if mesh.num_faces() > BRUTE_FORCE_FACE_LIMIT {
        return Err(EngineError::MeshTooLarge {
            faces: mesh.num_faces(),
            limit: BRUTE_FORCE_FACE_LIMIT,
        });
    }
    check_sources(mesh.num_vertices(), sources)?;
    let n = mesh.num_vertices();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (p, row) in adj.iter_mut().enumerate() {
        let mut best = vec![f64::INFINITY; n];
        let mut walker = Walker {
            mesh,
            best: &mut best,
            on_path: vec![false; mesh.num_faces()],
            max_sequence,
        };
        for o in mesh.ring(p) {
            walker.start(o);
        }
        for (q, &d) in best.iter().enumerate() {
            if q != p && d.is_finite() {
                row.push((q, d));
            }
        }
    }
    Ok(DistanceField::from_vec(dijkstra(&adj, sources)))
}

struct Walker<'a> {
    mesh: &'a SurfaceMesh,
    best: &'a mut [f64],
    on_path: Vec<bool>,
    max_sequence: usize,
}

impl Walker<'_> {
    /// Unfolds the corner of `o` with its origin at `(0, 0)`.
    fn start(&mut self, o: usize) {
        let m = self.mesh;
        let far = next_half_edge(o);
        let back = prev_half_edge(o);
        let w = Vec2::new(m.length(o), 0.0);
        let u = place_apex(m.length(o), m.length(back), m.length(far));
        self.see(m.origin(far), m.length(o));
        self.see(m.origin(back), m.length(back));
        let f = face_of(o);
        self.on_path[f] = true;
        self.cross(far, w, u, w, u, 1);
        self.on_path[f] = false;
    }

    fn see(&mut self, v: usize, d: f64) {
        if d < self.best[v] {
            self.best[v] = d;
        }
    }

    /// Crosses half-edge `e` (unfolded from `e0` to `e1`, with the current
    /// face on its left) while the cone `[lo, hi]` (counter-clockwise) is
    /// non-empty.
    fn cross(&mut self, e: usize, e0: Vec2, e1: Vec2, lo: Vec2, hi: Vec2, depth: usize) {
        if depth >= self.max_sequence {
            return;
        }
        let m = self.mesh;
        let Some(g) = m.opposite(e) else {
            return;
        };
        let f = face_of(g);
        if self.on_path[f] {
            return;
        }
        let l = m.length(e);
        let along = (e1 - e0) * (1.0 / l);
        let left = Vec2::new(-along.y, along.x);
        let p = place_apex(l, m.length(next_half_edge(g)), m.length(prev_half_edge(g)));
        let r = e0 + along * p.x - left * p.y;

        if inside(lo, hi, r) {
            self.see(m.target(next_half_edge(g)), r.norm());
        }
        self.on_path[f] = true;
        // Left part of the new face: edge e0 -> r, then r -> e1.
        let (lo_a, hi_a) = (ccw_max(lo, e0), ccw_min(hi, r));
        if lo_a.cross(hi_a) > 0.0 {
            self.cross(next_half_edge(g), e0, r, lo_a, hi_a, depth + 1);
        }
        let (lo_b, hi_b) = (ccw_max(lo, r), ccw_min(hi, e1));
        if lo_b.cross(hi_b) > 0.0 {
            self.cross(prev_half_edge(g), r, e1, lo_b, hi_b, depth + 1);
        }
        self.on_path[f] = false;
    }
}

/// Closed cone membership with relative slack.
fn inside(lo: Vec2, hi: Vec2, d: Vec2) -> bool {
    let tol = CONE_TOL * d.norm();
    lo.cross(d) >= -tol * lo.norm() && d.cross(hi) >= -tol * hi.norm()
}

/// Of two directions in a common half-plane, the more counter-clockwise.
fn ccw_max(a: Vec2, b: Vec2) -> Vec2 {
    if a.cross(b) > 0.0 {
        b
    } else {
        a
    }
}

fn ccw_min(a: Vec2, b: Vec2) -> Vec2 {
    if a.cross(b) > 0.0 {
        a
    } else {
        b
    }
}
