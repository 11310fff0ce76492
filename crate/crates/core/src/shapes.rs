//! Procedural test meshes.
//!
//! All constructors produce consistently oriented meshes (outward normals
//! for closed surfaces, `+z` for planar patches).

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::mesh::SurfaceMesh;

fn build(positions: Vec<[f64; 3]>, faces: &[[usize; 3]]) -> SurfaceMesh {
    SurfaceMesh::from_triangles(positions, faces).expect("procedural mesh is valid")
}

fn push_quad(faces: &mut Vec<[usize; 3]>, a: usize, b: usize, c: usize, d: usize) {
    faces.push([a, b, c]);
    faces.push([a, c, d]);
}

/// Right triangle with legs of length 1 along x and y.
pub fn single_triangle() -> SurfaceMesh {
    build(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], &[[0, 1, 2]])
}

pub fn unit_square() -> SurfaceMesh {
    planar_grid(1, 1, 1.0)
}

/// `nx` by `ny` cells in the plane, each split into two triangles. Vertex
/// `(i, j)` has index `j * (nx + 1) + i`.
pub fn planar_grid(nx: usize, ny: usize, spacing: f64) -> SurfaceMesh {
    height_field(nx, ny, spacing, |_, _| 0.0)
}

/// Grid as in [`planar_grid`] with vertex `(i, j)` lifted to
/// `height(x, y)`. The diagonal direction alternates in a checkerboard.
pub fn height_field(nx: usize, ny: usize, spacing: f64, height: impl Fn(f64, f64) -> f64) -> SurfaceMesh {
    let (positions, faces) = grid_parts(nx, ny, spacing, &height, |_, _| true);
    build(positions, &faces)
}

fn grid_parts(
    nx: usize,
    ny: usize,
    spacing: f64,
    height: &dyn Fn(f64, f64) -> f64,
    keep_cell: impl Fn(usize, usize) -> bool,
) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let idx = |i: usize, j: usize| j * (nx + 1) + i;
    let mut positions = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=ny {
        for i in 0..=nx {
            let (x, y) = (i as f64 * spacing, j as f64 * spacing);
            positions.push([x, y, height(x, y)]);
        }
    }
    let mut faces = Vec::with_capacity(2 * nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            if !keep_cell(i, j) {
                continue;
            }
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            if (i + j) % 2 == 0 {
                push_quad(&mut faces, a, b, c, d);
            } else {
                push_quad(&mut faces, b, c, d, a);
            }
        }
    }
    compact(positions, faces)
}

/// Drops vertices no face references and renumbers the rest in order.
fn compact(positions: Vec<[f64; 3]>, faces: Vec<[usize; 3]>) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let mut remap = vec![usize::MAX; positions.len()];
    for f in &faces {
        for &v in f {
            remap[v] = 0;
        }
    }
    let mut kept = Vec::new();
    for (v, p) in positions.into_iter().enumerate() {
        if remap[v] == 0 {
            remap[v] = kept.len();
            kept.push(p);
        }
    }
    let faces = faces.into_iter().map(|f| f.map(|v| remap[v])).collect();
    (kept, faces)
}

/// Planar L-shaped region: a `2n` by `2n` grid with the upper-right `n` by
/// `n` block removed. The reflex corner sits at `(n, n)`.
pub fn l_shape(n: usize, spacing: f64) -> SurfaceMesh {
    let (positions, faces) = grid_parts(2 * n, 2 * n, spacing, &|_, _| 0.0, |i, j| i < n || j < n);
    build(positions, &faces)
}

/// Monkey saddle `z = s (x³ - 3xy²)` sampled on a centered grid.
pub fn monkey_saddle(n: usize, extent: f64, scale: f64) -> SurfaceMesh {
    let spacing = 2.0 * extent / n as f64;
    height_field(n, n, spacing, |x, y| {
        let (x, y) = (x - extent, y - extent);
        scale * (x * x * x - 3.0 * x * y * y)
    })
}

/// Axis-aligned unit cube with each face split into two triangles.
/// Vertex `x + 2y + 4z` sits at `(x, y, z)`, so vertices 0 and 7 are
/// opposite corners.
pub fn cube() -> SurfaceMesh {
    let mut positions = Vec::with_capacity(8);
    for k in 0..8 {
        positions.push([(k & 1) as f64, ((k >> 1) & 1) as f64, ((k >> 2) & 1) as f64]);
    }
    let mut faces = Vec::with_capacity(12);
    for q in [
        [0, 2, 3, 1],
        [4, 5, 7, 6],
        [0, 1, 5, 4],
        [2, 6, 7, 3],
        [0, 4, 6, 2],
        [1, 3, 7, 5],
    ] {
        push_quad(&mut faces, q[0], q[1], q[2], q[3]);
    }
    build(positions, &faces)
}

pub fn tetrahedron() -> SurfaceMesh {
    build(
        vec![[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]],
        &[[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]],
    )
}

pub fn octahedron() -> SurfaceMesh {
    build(
        vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        &[
            [4, 0, 2],
            [4, 2, 1],
            [4, 1, 3],
            [4, 3, 0],
            [5, 2, 0],
            [5, 1, 2],
            [5, 3, 1],
            [5, 0, 3],
        ],
    )
}

fn icosahedron_parts() -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let positions = vec![
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (positions.into_iter().map(normalize).collect(), faces)
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

pub fn icosahedron() -> SurfaceMesh {
    let (p, f) = icosahedron_parts();
    build(p, &f)
}

/// Unit sphere made by splitting every icosahedron triangle into four
/// `subdivisions` times: `20 * 4^subdivisions` faces.
fn icosphere_parts(subdivisions: u32) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let (mut positions, mut faces) = icosahedron_parts();
    for _ in 0..subdivisions {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, positions: &mut Vec<[f64; 3]>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let (p, q) = (positions[a], positions[b]);
                positions.push(normalize([(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0, (p[2] + q[2]) / 2.0]));
                positions.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut positions);
            let bc = mid(b, c, &mut positions);
            let ca = mid(c, a, &mut positions);
            next.extend_from_slice(&[[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    (positions, faces)
}

pub fn icosphere(subdivisions: u32) -> SurfaceMesh {
    let (p, f) = icosphere_parts(subdivisions);
    build(p, &f)
}

/// Icosphere with radius `1 + amplitude * sin(4x) sin(4y) sin(4z)`. The
/// bumps create many saddle vertices.
pub fn bumpy_sphere(subdivisions: u32, amplitude: f64) -> SurfaceMesh {
    let (p, f) = icosphere_parts(subdivisions);
    let p = p
        .into_iter()
        .map(|[x, y, z]| {
            let r = 1.0 + amplitude * (4.0 * x).sin() * (4.0 * y).sin() * (4.0 * z).sin();
            [r * x, r * y, r * z]
        })
        .collect();
    build(p, &f)
}

/// Torus around the z axis, `nu` segments around the main ring and `nv`
/// around the tube. The inner half of the tube carries saddle vertices.
pub fn torus(major: f64, minor: f64, nu: usize, nv: usize) -> SurfaceMesh {
    bumpy_torus(major, minor, nu, nv, 0.0)
}

/// Torus whose tube radius is modulated by `1 + amplitude * sin(3u) sin(5v)`.
pub fn bumpy_torus(major: f64, minor: f64, nu: usize, nv: usize, amplitude: f64) -> SurfaceMesh {
    assert!(nu >= 3 && nv >= 3, "torus needs at least 3 segments each way");
    let mut positions = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = 2.0 * PI * i as f64 / nu as f64;
        for j in 0..nv {
            let v = 2.0 * PI * j as f64 / nv as f64;
            let r = minor * (1.0 + amplitude * (3.0 * u).sin() * (5.0 * v).sin());
            let ring = major + r * v.cos();
            positions.push([ring * u.cos(), ring * u.sin(), r * v.sin()]);
        }
    }
    let idx = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            push_quad(&mut faces, idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
        }
    }
    build(positions, &faces)
}

/// `n` unit equilateral triangles around a center vertex 0. For `n < 6` the
/// ring is lifted into a cone, `n = 6` is a flat hexagon, and even `n > 6`
/// alternates ring heights to make a saddle with angle sum `nπ/3`.
pub fn regular_fan(n: usize) -> SurfaceMesh {
    assert!(n >= 3, "fan needs at least three triangles");
    assert!(n <= 6 || n.is_multiple_of(2), "saddle fans need an even triangle count");
    let s = (PI / n as f64).sin();
    let mut positions = vec![[0.0, 0.0, 0.0]];
    for k in 0..n {
        let theta = 2.0 * PI * k as f64 / n as f64;
        let (rho, z) = if n < 6 {
            let rho = 1.0 / (2.0 * s);
            (rho, (1.0 - rho * rho).max(0.0).sqrt())
        } else if n == 6 {
            (1.0, 0.0)
        } else {
            let h = ((1.0 - 4.0 * s * s) / (4.0 * (1.0 - s * s))).sqrt();
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            ((1.0 - h * h).sqrt(), sign * h)
        };
        positions.push([rho * theta.cos(), rho * theta.sin(), z]);
    }
    let faces: Vec<[usize; 3]> = (0..n).map(|k| [0, 1 + k, 1 + (k + 1) % n]).collect();
    build(positions, &faces)
}
