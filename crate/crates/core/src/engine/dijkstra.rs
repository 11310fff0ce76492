use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::engine::field::{check_sources, DistanceField};
use crate::error::EngineError;
use crate::mesh::SurfaceMesh;

/// Shortest paths along mesh edges only: an upper bound on geodesic
/// distance at every vertex.
pub fn run_dijkstra(mesh: &SurfaceMesh, sources: &[usize]) -> Result<DistanceField, EngineError> {
    check_sources(mesh.num_vertices(), sources)?;
    let n = mesh.num_vertices();
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (u, v, l) in mesh.edges() {
        adj[u].push((v, l));
        adj[v].push((u, l));
    }
    Ok(DistanceField::from_vec(dijkstra(&adj, sources)))
}

/// Plain Dijkstra over an adjacency list.
pub(crate) fn dijkstra(adj: &[Vec<(usize, f64)>], sources: &[usize]) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        dist[s] = 0.0;
        heap.push((Reverse(OrdF64(0.0)), s));
    }
    while let Some((Reverse(OrdF64(d)), u)) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, l) in &adj[u] {
            let nd = d + l;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push((Reverse(OrdF64(nd)), v));
            }
        }
    }
    dist
}

#[derive(Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn single_triangle() {
        assert_eq!(run_dijkstra(&shapes::single_triangle(), &[0]).unwrap().values(), &[0.0, 1.0, 1.0]);
    }

    #[test]
    fn cube_opposite_corner_exceeds_geodesic() {
        let d = run_dijkstra(&shapes::cube(), &[0]).unwrap();
        // Every cube triangulation offers 1 + √2 along a face diagonal.
        assert!((d[7] - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert!(d[7] >= 5f64.sqrt());
    }

    #[test]
    fn grid_is_above_euclidean() {
        let mesh = shapes::planar_grid(6, 4, 0.5);
        let d = run_dijkstra(&mesh, &[0]).unwrap();
        for v in 0..mesh.num_vertices() {
            let e = crate::mesh::distance3(mesh.position(0), mesh.position(v));
            assert!(d[v] >= e - 1e-12);
        }
    }
}
