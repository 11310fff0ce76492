use geodesic_core::engine::{brute_force_geodesic, run_ich, run_pch, EngineConfig, SelectionMode};
use geodesic_core::shapes;
use geodesic_core::SurfaceMesh;

fn tiny_meshes() -> Vec<(&'static str, SurfaceMesh)> {
    vec![
        ("triangle", shapes::single_triangle()),
        ("square", shapes::unit_square()),
        ("strip", shapes::planar_grid(4, 1, 1.0)),
        ("grid", shapes::planar_grid(3, 3, 0.7)),
        ("cube", shapes::cube()),
        ("tetrahedron", shapes::tetrahedron()),
        ("octahedron", shapes::octahedron()),
        ("icosahedron", shapes::icosahedron()),
        ("cone5", shapes::regular_fan(5)),
        ("saddle8", shapes::regular_fan(8)),
        ("saddle10", shapes::regular_fan(10)),
        ("l1", shapes::l_shape(1, 1.0)),
        ("l2", shapes::l_shape(2, 0.5)),
        ("monkey", shapes::monkey_saddle(4, 1.0, 0.6)),
        ("torus", shapes::torus(1.0, 0.45, 5, 4)),
        ("bumps", shapes::height_field(4, 4, 0.5, |x, y| 0.3 * (3.0 * x).sin() * (2.0 * y).cos())),
    ]
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-3)
}

#[test]
fn pch_matches_brute_force_on_tiny_meshes() {
    let mut worst: f64 = 0.0;
    for (name, mesh) in tiny_meshes() {
        assert!(mesh.num_faces() <= 50, "{name}");
        for s in 0..mesh.num_vertices() {
            let oracle = brute_force_geodesic(&mesh, &[s], mesh.num_faces()).unwrap();
            for cfg in [EngineConfig::default().with_k(1).with_workers(1), EngineConfig::default().with_k(64).with_workers(4)] {
                let (d, _) = run_pch(&mesh, &[s], &cfg).unwrap();
                for v in 0..mesh.num_vertices() {
                    worst = worst.max((d[v] - oracle[v]).abs());
                    assert!(close(d[v], oracle[v], 1e-9), "{name} source {s} vertex {v}: pch {} oracle {}", d[v], oracle[v]);
                }
            }
        }
    }
    eprintln!("worst abs deviation {worst:e}");
}

#[test]
fn pch_matches_ich_on_medium_meshes() {
    let meshes = vec![
        ("ico3", shapes::icosphere(3)),
        ("bumpy3", shapes::bumpy_sphere(3, 0.2)),
        ("torus", shapes::bumpy_torus(1.0, 0.4, 40, 24, 0.2)),
        ("monkey", shapes::monkey_saddle(20, 1.0, 0.5)),
    ];
    for (name, mesh) in meshes {
        let (ich, istats) = run_ich(&mesh, &[0]).unwrap();
        for (k, t, mode) in [(1, 1, SelectionMode::Exact), (256, 4, SelectionMode::Exact), (4096, 8, SelectionMode::Strided)] {
            let cfg = EngineConfig::default().with_k(k).with_workers(t).with_selection(mode);
            let (d, stats) = run_pch(&mesh, &[0], &cfg).unwrap();
            let mut worst: f64 = 0.0;
            for v in 0..mesh.num_vertices() {
                worst = worst.max((d[v] - ich[v]).abs() / ich[v].max(1e-3));
            }
            eprintln!("{name} k={k} t={t} {mode:?}: worst rel {worst:e}, windows {} vs ich {}", stats.total_windows_created, istats.total_windows_created);
            assert!(worst <= 1e-9, "{name} k={k}");
        }
    }
}
