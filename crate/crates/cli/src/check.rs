//! Consistency checks on distance fields.

use geodesic_core::engine::run_dijkstra;
use geodesic_core::mesh::distance3;
use geodesic_core::{EngineError, SurfaceMesh};

/// Relative difference, with equal values (including two infinities)
/// counting as zero.
pub fn relative_deviation(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if !a.is_finite() || !b.is_finite() {
        return f64::INFINITY;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Comparison {
    pub max_relative_deviation: f64,
    pub worst_vertex: Option<usize>,
    /// `(vertex, left, right)` for every vertex over the tolerance.
    pub mismatches: Vec<(usize, f64, f64)>,
}

impl Comparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares two fields vertex by vertex. Fields of different lengths
/// mismatch at every vertex past the shorter one.
pub fn compare_fields(a: &[f64], b: &[f64], tolerance: f64) -> Comparison {
    let mut c = Comparison::default();
    for v in 0..a.len().max(b.len()) {
        let (x, y) = (a.get(v).copied().unwrap_or(f64::NAN), b.get(v).copied().unwrap_or(f64::NAN));
        let r = if v < a.len() && v < b.len() { relative_deviation(x, y) } else { f64::INFINITY };
        if c.worst_vertex.is_none() || r > c.max_relative_deviation {
            c.max_relative_deviation = r;
            c.worst_vertex = Some(v);
        }
        if !(r <= tolerance) {
            c.mismatches.push((v, x, y));
        }
    }
    c
}

/// Edges whose endpoint distances differ by more than the edge length.
pub fn lipschitz_violations(mesh: &SurfaceMesh, d: &[f64], tolerance: f64) -> Vec<(usize, usize, f64)> {
    mesh.edges()
        .filter_map(|(a, b, l)| {
            if d[a].is_infinite() && d[b].is_infinite() {
                return None;
            }
            let excess = (d[a] - d[b]).abs() - l;
            let scale = 1f64.max(d[a].min(d[b]));
            (!(excess <= tolerance * scale)).then_some((a, b, excess))
        })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SandwichReport {
    /// Vertices nearer than the straight line to the nearest source.
    pub below_euclidean: Vec<usize>,
    /// Vertices farther than the shortest edge path.
    pub above_dijkstra: Vec<usize>,
}

impl SandwichReport {
    pub fn passed(&self) -> bool {
        self.below_euclidean.is_empty() && self.above_dijkstra.is_empty()
    }
}

/// Checks Euclidean ≤ `d` ≤ edge-graph distance at every vertex.
pub fn sandwich(mesh: &SurfaceMesh, sources: &[usize], d: &[f64], tolerance: f64) -> Result<SandwichReport, EngineError> {
    let upper = run_dijkstra(mesh, sources)?;
    let mut report = SandwichReport::default();
    for v in 0..mesh.num_vertices() {
        let straight = sources
            .iter()
            .map(|&s| distance3(mesh.position(s), mesh.position(v)))
            .fold(f64::INFINITY, f64::min);
        let slack = tolerance * d[v].max(1.0);
        if !(d[v] >= straight - slack) {
            report.below_euclidean.push(v);
        }
        if upper[v].is_finite() && !(d[v] <= upper[v] + slack) {
            report.above_dijkstra.push(v);
        }
    }
    Ok(report)
}

/// Spearman rank correlation, with ties given their average rank.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &p in &idx[i..=j] {
            r[p] = avg;
        }
        i = j + 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use geodesic_core::shapes;

    #[test]
    fn deviation_edge_cases() {
        assert_eq!(relative_deviation(0.0, 0.0), 0.0);
        assert_eq!(relative_deviation(f64::INFINITY, f64::INFINITY), 0.0);
        assert_eq!(relative_deviation(1.0, f64::INFINITY), f64::INFINITY);
        assert!((relative_deviation(2.0, 1.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn comparison_lists_mismatches() {
        let c = compare_fields(&[0.0, 1.0, 2.0], &[0.0, 1.0, 2.5], 1e-9);
        assert_eq!(c.mismatches, vec![(2, 2.0, 2.5)]);
        assert_eq!(c.worst_vertex, Some(2));
        assert!(compare_fields(&[1.0], &[1.0, 2.0], 1e-9).mismatches.len() == 1);
        assert!(compare_fields(&[1.0, 2.0], &[1.0, 2.0], 0.0).passed());
    }

    #[test]
    fn spearman_examples() {
        assert!((spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]) - 1.0).abs() < 1e-15);
        assert!((spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]) + 1.0).abs() < 1e-15);
        assert_eq!(ranks(&[5.0, 1.0, 5.0]), vec![2.5, 1.0, 2.5]);
    }

    #[test]
    fn corrupted_field_breaks_lipschitz() {
        let mesh = shapes::unit_square();
        let good = [0.0, 1.0, 1.0, 2f64.sqrt()];
        assert!(lipschitz_violations(&mesh, &good, 1e-9).is_empty());
        assert!(sandwich(&mesh, &[0], &good, 1e-9).unwrap().passed());
        let bad = [0.0, 1.0, 1.0, 3.0];
        assert!(!lipschitz_violations(&mesh, &bad, 1e-9).is_empty());
        assert_eq!(sandwich(&mesh, &[0], &bad, 1e-9).unwrap().above_dijkstra, vec![3]);
    }
}
