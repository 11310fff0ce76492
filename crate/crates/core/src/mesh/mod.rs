//! Minimal half-edge triangle mesh.
//!
//! Every triangle `t` owns the three half-edges `3t`, `3t + 1`, `3t + 2`;
//! the successor of a half-edge inside its face is implicit, so each record
//! only stores its origin vertex, its opposite and its length. Vertex
//! positions are kept for I/O and for Euclidean lower-bound checks; the
//! distance engines only ever look at edge lengths.
//!
//! On top of the connectivity the mesh caches, per half-edge, the corner
//! angle at its origin and the angular position of the half-edge in the
//! counter-clockwise ring around that origin. These are what the saddle fan
//! construction walks.

pub mod io;

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::MeshError;
use crate::planar;

/// Opposite-pointer sentinel for half-edges on the mesh boundary.
pub const BOUNDARY: u32 = u32::MAX;

/// Tolerance on the vertex angle sum when telling euclidean vertices apart.
pub const ANGLE_EPSILON: f64 = 1e-9;

/// Relative slack below which a triangle counts as degenerate.
const DEGENERATE_REL_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfEdge {
    pub origin: u32,
    pub opposite: u32,
    pub length: f64,
}

impl HalfEdge {
    #[inline]
    pub fn opposite(&self) -> Option<usize> {
        (self.opposite != BOUNDARY).then_some(self.opposite as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexClass {
    /// Angle sum below 2π.
    Spherical,
    /// Angle sum equal to 2π within [`ANGLE_EPSILON`].
    Euclidean,
    /// Angle sum above 2π.
    Saddle,
}

impl VertexClass {
    pub fn from_angle_sum(total: f64) -> Self {
        let full = 2.0 * PI;
        if total < full - ANGLE_EPSILON {
            VertexClass::Spherical
        } else if total > full + ANGLE_EPSILON {
            VertexClass::Saddle
        } else {
            VertexClass::Euclidean
        }
    }
}

#[inline]
pub fn next_half_edge(j: usize) -> usize {
    3 * (j / 3) + (j + 1) % 3
}

#[inline]
pub fn prev_half_edge(j: usize) -> usize {
    3 * (j / 3) + (j + 2) % 3
}

#[inline]
pub fn face_of(j: usize) -> usize {
    j / 3
}

#[derive(Clone, Debug)]
pub struct SurfaceMesh {
    positions: Vec<[f64; 3]>,
    half_edges: Vec<HalfEdge>,
    outgoing: Vec<u32>,
    vertex_class: Vec<VertexClass>,
    boundary_vertex: Vec<bool>,
    total_angle: Vec<f64>,
    corner_angle: Vec<f64>,
    ring_angle: Vec<f64>,
}

impl SurfaceMesh {
    /// Builds the half-edge structure from an indexed triangle list. Faces
    /// must be consistently oriented; edge lengths come from `positions`.
    pub fn from_triangles(
        positions: Vec<[f64; 3]>,
        faces: &[[usize; 3]],
    ) -> Result<Self, MeshError> {
        if faces.is_empty() {
            return Err(MeshError::Empty);
        }
        let n = positions.len();
        let mut half_edges = Vec::with_capacity(3 * faces.len());
        for (f, tri) in faces.iter().enumerate() {
            for &v in tri {
                if v >= n {
                    return Err(MeshError::IndexOutOfRange {
                        face: f,
                        index: v,
                        count: n,
                    });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return Err(MeshError::RepeatedVertex(f));
            }
            let mut lengths = [0.0; 3];
            for k in 0..3 {
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                let l = distance3(positions[a], positions[b]);
                if !(l > 0.0) || !l.is_finite() {
                    return Err(MeshError::ZeroLengthEdge(a, b));
                }
                lengths[k] = l;
            }
            if !planar::is_valid_triangle(lengths[0], lengths[1], lengths[2], DEGENERATE_REL_TOL)
            {
                return Err(MeshError::DegenerateFace(f));
            }
            for k in 0..3 {
                half_edges.push(HalfEdge {
                    origin: tri[k] as u32,
                    opposite: BOUNDARY,
                    length: lengths[k],
                });
            }
        }

        let mut directed: HashMap<(u32, u32), usize> = HashMap::with_capacity(half_edges.len());
        for j in 0..half_edges.len() {
            let key = (half_edges[j].origin, half_edges[next_half_edge(j)].origin);
            if directed.insert(key, j).is_some() {
                return Err(MeshError::NonManifoldEdge(key.0 as usize, key.1 as usize));
            }
        }
        for j in 0..half_edges.len() {
            let (a, b) = (half_edges[j].origin, half_edges[next_half_edge(j)].origin);
            if let Some(&o) = directed.get(&(b, a)) {
                half_edges[j].opposite = o as u32;
                // Both directions are measured from the same two points.
                half_edges[j].length = half_edges[o].length.min(half_edges[j].length);
            }
        }

        Self::from_half_edges(positions, half_edges)
    }

    fn from_half_edges(
        positions: Vec<[f64; 3]>,
        half_edges: Vec<HalfEdge>,
    ) -> Result<Self, MeshError> {
        let n = positions.len();
        let m = half_edges.len();

        let mut corner_angle = vec![0.0; m];
        for j in 0..m {
            let a = half_edges[j].length;
            let b = half_edges[prev_half_edge(j)].length;
            let c = half_edges[next_half_edge(j)].length;
            corner_angle[j] = planar::corner_angle(a, b, c);
        }

        let mut outgoing = vec![BOUNDARY; n];
        let mut incident = vec![0usize; n];
        for (j, he) in half_edges.iter().enumerate() {
            let v = he.origin as usize;
            incident[v] += 1;
            if outgoing[v] == BOUNDARY || he.opposite == BOUNDARY {
                outgoing[v] = j as u32;
            }
        }

        let mut ring_angle = vec![0.0; m];
        let mut total_angle = vec![0.0; n];
        let mut boundary_vertex = vec![false; n];
        for v in 0..n {
            if outgoing[v] == BOUNDARY {
                continue;
            }
            let start = outgoing[v] as usize;
            let mut o = start;
            let mut acc = 0.0;
            let mut visited = 0usize;
            loop {
                ring_angle[o] = acc;
                acc += corner_angle[o];
                visited += 1;
                if visited > incident[v] {
                    return Err(MeshError::NonManifoldVertex(v));
                }
                match half_edges[prev_half_edge(o)].opposite() {
                    None => {
                        boundary_vertex[v] = true;
                        break;
                    }
                    Some(next) if next == start => break,
                    Some(next) => o = next,
                }
            }
            if visited != incident[v] {
                return Err(MeshError::NonManifoldVertex(v));
            }
            total_angle[v] = acc;
        }

        let vertex_class = total_angle.iter().map(|&t| VertexClass::from_angle_sum(t)).collect();

        Ok(Self {
            positions,
            half_edges,
            outgoing,
            vertex_class,
            boundary_vertex,
            total_angle,
            corner_angle,
            ring_angle,
        })
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.positions.len()
    }

    #[inline]
    pub fn num_faces(&self) -> usize {
        self.half_edges.len() / 3
    }

    #[inline]
    pub fn num_half_edges(&self) -> usize {
        self.half_edges.len()
    }

    #[inline]
    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    #[inline]
    pub fn half_edge(&self, j: usize) -> &HalfEdge {
        &self.half_edges[j]
    }

    #[inline]
    pub fn origin(&self, j: usize) -> usize {
        self.half_edges[j].origin as usize
    }

    /// Vertex the half-edge points to.
    #[inline]
    pub fn target(&self, j: usize) -> usize {
        self.origin(next_half_edge(j))
    }

    #[inline]
    pub fn opposite(&self, j: usize) -> Option<usize> {
        self.half_edges[j].opposite()
    }

    #[inline]
    pub fn length(&self, j: usize) -> f64 {
        self.half_edges[j].length
    }

    #[inline]
    pub fn outgoing(&self, v: usize) -> Option<usize> {
        let o = self.outgoing[v];
        (o != BOUNDARY).then_some(o as usize)
    }

    #[inline]
    pub fn positions(&self) -> &[[f64; 3]] {
        &self.positions
    }

    #[inline]
    pub fn position(&self, v: usize) -> [f64; 3] {
        self.positions[v]
    }

    pub fn face_vertices(&self, f: usize) -> [usize; 3] {
        [self.origin(3 * f), self.origin(3 * f + 1), self.origin(3 * f + 2)]
    }

    pub fn faces(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        (0..self.num_faces()).map(|f| self.face_vertices(f))
    }

    /// Interior angle at the origin of `j` inside the face of `j`.
    #[inline]
    pub fn corner_angle(&self, j: usize) -> f64 {
        self.corner_angle[j]
    }

    /// Angular position of half-edge `j` in the counter-clockwise ring
    /// around its origin. Boundary vertices start their ring at the
    /// outgoing boundary half-edge.
    #[inline]
    pub fn ring_angle(&self, j: usize) -> f64 {
        self.ring_angle[j]
    }

    #[inline]
    pub fn total_angle(&self, v: usize) -> f64 {
        self.total_angle[v]
    }

    #[inline]
    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    #[inline]
    pub fn vertex_class(&self, v: usize) -> VertexClass {
        self.vertex_class[v]
    }

    /// Same as [`vertex_class`](Self::vertex_class); recomputes nothing.
    pub fn classify_vertex(&self, v: usize) -> VertexClass {
        self.vertex_class[v]
    }

    /// Whether shortest paths may bend at `v`: interior saddles, and
    /// boundary vertices whose one-sided angle exceeds π.
    #[inline]
    pub fn is_fan_vertex(&self, v: usize) -> bool {
        if self.boundary_vertex[v] {
            self.total_angle[v] > PI + ANGLE_EPSILON
        } else {
            self.vertex_class[v] == VertexClass::Saddle
        }
    }

    /// Outgoing half-edges of `v` in counter-clockwise order.
    pub fn ring(&self, v: usize) -> Ring<'_> {
        Ring {
            mesh: self,
            start: self.outgoing(v),
            current: self.outgoing(v),
        }
    }

    /// Neighbors of `v` in counter-clockwise order. For boundary vertices
    /// the list runs from one boundary neighbor to the other.
    pub fn one_ring(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut last = None;
        for o in self.ring(v) {
            out.push(self.target(o));
            last = Some(o);
        }
        if self.boundary_vertex[v] {
            if let Some(o) = last {
                out.push(self.origin(prev_half_edge(o)));
            }
        }
        out
    }

    /// Undirected edges `(u, v, length)`, each reported once.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.num_half_edges()).filter_map(move |j| {
            let keep = match self.opposite(j) {
                None => true,
                Some(o) => j < o,
            };
            keep.then(|| (self.origin(j), self.target(j), self.length(j)))
        })
    }

    pub fn mean_edge_length(&self) -> f64 {
        let (sum, count) = self.edges().fold((0.0, 0usize), |(s, c), e| (s + e.2, c + 1));
        sum / count.max(1) as f64
    }
}

/// Counter-clockwise walk over the outgoing half-edges of one vertex.
pub struct Ring<'a> {
    mesh: &'a SurfaceMesh,
    start: Option<usize>,
    current: Option<usize>,
}

impl Iterator for Ring<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let o = self.current?;
        self.current = match self.mesh.opposite(prev_half_edge(o)) {
            Some(n) if Some(n) != self.start => Some(n),
            _ => None,
        };
        Some(o)
    }
}

#[inline]
pub fn distance3(a: [f64; 3], b: [f64; 3]) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}
