use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use geodesic_cli::files::read_distances;
use geodesic_core::mesh::io::save_obj;
use geodesic_core::{shapes, SurfaceMesh};
use tempfile::TempDir;

fn geodesic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geodesic")).args(args).output().expect("binary runs")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_mesh(dir: &TempDir, name: &str, mesh: &SurfaceMesh) -> PathBuf {
    let p = dir.path().join(name);
    save_obj(&p, mesh).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn distances(p: &Path) -> Vec<f64> {
    read_distances(std::io::BufReader::new(std::fs::File::open(p).unwrap())).unwrap()
}

#[test]
fn cube_opposite_corner() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "cube.obj", &shapes::cube());
    let out = dir.path().join("d.txt");
    let o = geodesic(&["compute", "--mesh", s(&mesh), "--source", "0", "--algo", "pch", "--out", s(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 8);
    let d = distances(&out);
    assert!((d[7] - 5f64.sqrt()).abs() < 1e-12, "{}", d[7]);
    assert!(stderr(&o).contains("8 vertices"));
}

#[test]
fn distances_to_stdout() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "tri.obj", &shapes::single_triangle());
    let o = geodesic(&["compute", "--mesh", s(&mesh), "--source", "0", "--out", "-"]);
    assert!(o.status.success());
    let back = read_distances(&o.stdout[..]).unwrap();
    assert_eq!(back, vec![0.0, 1.0, 1.0]);
}

#[test]
fn brute_force_guard_exits_3() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "ico.obj", &shapes::icosphere(2));
    let o = geodesic(&["compute", "--mesh", s(&mesh), "--source", "0", "--algo", "brute", "--out", "-"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("mesh too large for brute-force oracle"));
    assert!(o.stdout.is_empty());
}

#[test]
fn source_file_gives_pointwise_minimum() {
    let dir = TempDir::new().unwrap();
    let m = shapes::bumpy_sphere(2, 0.2);
    let mesh = write_mesh(&dir, "bumpy.obj", &m);
    let sources: Vec<usize> = (0..16).map(|i| (i * 37 + 5) % m.num_vertices()).collect();
    let list = dir.path().join("srcs.txt");
    let body: Vec<String> = sources.iter().map(|v| v.to_string()).collect();
    std::fs::write(&list, format!("# sixteen sources\n{}\n", body.join(" "))).unwrap();

    let joint = dir.path().join("joint.txt");
    let o = geodesic(&["compute", "--mesh", s(&mesh), "--sources", s(&list), "--k", "64", "--threads", "2", "--out", s(&joint)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let joint = distances(&joint);

    let mut expected = vec![f64::INFINITY; m.num_vertices()];
    for (i, src) in sources.iter().enumerate() {
        let single = dir.path().join(format!("s{i}.txt"));
        let o = geodesic(&["compute", "--mesh", s(&mesh), "--source", &src.to_string(), "--out", s(&single)]);
        assert!(o.status.success());
        for (e, d) in expected.iter_mut().zip(distances(&single)) {
            *e = e.min(d);
        }
    }
    for v in 0..m.num_vertices() {
        assert!((joint[v] - expected[v]).abs() <= 1e-9 * expected[v].max(1e-3), "vertex {v}");
    }
}

#[test]
fn stats_and_ply_outputs() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "ico.obj", &shapes::icosphere(1));
    let stats = dir.path().join("stats.json");
    let ply = dir.path().join("d.ply");
    let o = geodesic(&[
        "compute", "--mesh", s(&mesh), "--source", "3", "--stats", s(&stats), "--ply", s(&ply), "--ascii",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
    assert_eq!(json["schema"], 1);
    assert_eq!(json["algorithm"], "pch");
    assert!(json["total_windows_created"].as_u64().unwrap() > 0);
    let text = std::fs::read_to_string(&ply).unwrap();
    assert!(text.contains("format ascii 1.0"));
    assert!(text.contains("property double geodesic_distance"));
}

#[test]
fn export_ply_is_binary_by_default() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "cube.obj", &shapes::cube());
    let plain = dir.path().join("plain.ply");
    let with = dir.path().join("with.ply");
    assert!(geodesic(&["export-ply", "--mesh", s(&mesh), "--out", s(&plain)]).status.success());
    assert!(geodesic(&["export-ply", "--mesh", s(&mesh), "--source", "0", "--out", s(&with)]).status.success());
    let a = std::fs::read(&plain).unwrap();
    let b = std::fs::read(&with).unwrap();
    let header = |bytes: &[u8]| {
        let end = bytes.windows(10).position(|w| w == b"end_header").unwrap();
        String::from_utf8_lossy(&bytes[..end]).into_owned()
    };
    assert!(header(&a).contains("binary_little_endian"));
    assert!(!header(&a).contains("geodesic_distance"));
    assert!(header(&b).contains("geodesic_distance"));
    // Eight extra doubles, one per vertex.
    assert_eq!(b.len() - a.len(), "property double geodesic_distance\n".len() + 8 * 8);
}

#[test]
fn validate_passes_on_good_meshes() {
    let dir = TempDir::new().unwrap();
    for (name, m) in [("ico.obj", shapes::icosphere(3)), ("tri.obj", shapes::single_triangle())] {
        let mesh = write_mesh(&dir, name, &m);
        let o = geodesic(&["validate", "--mesh", s(&mesh), "--source", "0", "--k", "128", "--threads", "2"]);
        assert!(o.status.success(), "{name}: {}", stderr(&o));
        assert!(stderr(&o).contains("max relative deviation vs ich"));
    }
    let mesh = write_mesh(&dir, "tri.obj", &shapes::single_triangle());
    let report = dir.path().join("report.json");
    let o = geodesic(&["validate", "--mesh", s(&mesh), "--source", "0", "--out", s(&report)]);
    assert!(o.status.success());
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["max_relative_deviation_vs_ich"], 0.0);
    assert_eq!(json["max_relative_deviation_vs_brute"], 0.0);
}

#[test]
fn validate_reports_a_corrupted_file() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "ico.obj", &shapes::icosphere(2));
    let good = dir.path().join("good.txt");
    assert!(geodesic(&["compute", "--mesh", s(&mesh), "--source", "0", "--out", s(&good)]).status.success());
    let o = geodesic(&["validate", "--mesh", s(&mesh), "--source", "0", "--compare", s(&good)]);
    assert!(o.status.success(), "{}", stderr(&o));

    let mut d = distances(&good);
    d[17] *= 1.01;
    let bad = dir.path().join("bad.txt");
    let mut buf = Vec::new();
    geodesic_cli::files::write_distances(&mut buf, &d).unwrap();
    std::fs::write(&bad, buf).unwrap();
    let o = geodesic(&["validate", "--mesh", s(&mesh), "--source", "0", "--compare", s(&bad)]);
    assert_eq!(o.status.code(), Some(4));
    let err = stderr(&o);
    assert!(err.contains("vertex 17:"), "{err}");
    assert!(err.contains("validation failed"));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("none.obj");
    let o = geodesic(&["compute", "--mesh", s(&missing), "--source", "0"]);
    assert_eq!(o.status.code(), Some(1));

    let mesh = write_mesh(&dir, "tri.obj", &shapes::single_triangle());
    assert_eq!(geodesic(&["compute", "--mesh", s(&mesh), "--source", "9"]).status.code(), Some(2));
    assert_eq!(geodesic(&["compute", "--mesh", s(&mesh)]).status.code(), Some(2));
    assert_eq!(geodesic(&["compute", "--mesh", s(&mesh), "--source", "0", "--k", "0"]).status.code(), Some(2));
    assert_eq!(geodesic(&["compute", "--mesh", s(&mesh), "--bogus"]).status.code(), Some(2));

    let garbage = dir.path().join("garbage.obj");
    std::fs::write(&garbage, "v 0 0 0\nf 1 2 3\n").unwrap();
    assert_eq!(geodesic(&["compute", "--mesh", s(&garbage), "--source", "0"]).status.code(), Some(1));
}

#[test]
fn k_with_sequential_engine_warns() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "tri.obj", &shapes::single_triangle());
    let o = geodesic(&["compute", "--mesh", s(&mesh), "--source", "0", "--algo", "ich", "--k", "8"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning: --k only applies"));
}

#[test]
fn bench_csv_is_identical_across_invocations() {
    let dir = TempDir::new().unwrap();
    let mesh = write_mesh(&dir, "ico.obj", &shapes::icosphere(2));
    let run = |tag: &str| {
        let csv = dir.path().join(format!("{tag}.csv"));
        let json = dir.path().join(format!("{tag}.json"));
        let o = geodesic(&[
            "bench", "--mesh", s(&mesh), "--k", "16,256", "--threads", "1,2", "--repetitions", "3", "--seed", "11",
            "--out", s(&csv), "--stats", s(&json),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        (std::fs::read(&csv).unwrap(), std::fs::read_to_string(&json).unwrap())
    };
    let (a, json) = run("a");
    let (b, _) = run("b");
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().count(), 1 + 3 + 2 * 2 * 3);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rows = v["summary"].as_array().unwrap();
    assert_eq!(rows.len(), 1 + 4);
    assert!(rows[1]["propagation_share"].as_f64().unwrap() > 0.0);
    assert!(rows[2]["speedup"].as_f64().is_some());
}
