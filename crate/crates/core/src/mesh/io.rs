//! OBJ and PLY readers, PLY and OBJ writers.
//!
//! The OBJ reader understands `v x y z` and `f i j k` records (1-based or
//! negative relative indices, `/`-separated texture and normal indices are
//! ignored). The PLY reader handles `ascii` and `binary_little_endian`
//! encodings with any scalar vertex coordinate type and a face list
//! property named `vertex_indices` or `vertex_index`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::MeshError;
use crate::mesh::SurfaceMesh;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshFormat {
    Obj,
    Ply,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Result<Self, MeshError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        match ext.as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            other => Err(MeshError::UnsupportedFormat(other.to_string())),
        }
    }
}

impl std::str::FromStr for MeshFormat {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "obj" => Ok(MeshFormat::Obj),
            "ply" => Ok(MeshFormat::Ply),
            other => Err(MeshError::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PlyEncoding {
    Ascii,
    #[default]
    BinaryLittleEndian,
}

/// Raw indexed triangle data before half-edge construction.
#[derive(Clone, Debug, Default)]
pub struct TriangleSoup {
    pub positions: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl TriangleSoup {
    pub fn into_mesh(self) -> Result<SurfaceMesh, MeshError> {
        SurfaceMesh::from_triangles(self.positions, &self.faces)
    }
}

pub fn load_mesh(path: impl AsRef<Path>, format: Option<MeshFormat>) -> Result<SurfaceMesh, MeshError> {
    let path = path.as_ref();
    let format = match format {
        Some(f) => f,
        None => MeshFormat::from_path(path)?,
    };
    let reader = BufReader::new(File::open(path)?);
    let soup = match format {
        MeshFormat::Obj => read_obj(reader)?,
        MeshFormat::Ply => read_ply(reader)?,
    };
    soup.into_mesh()
}

fn parse_err(format: &'static str, line: usize, message: impl Into<String>) -> MeshError {
    MeshError::Parse {
        format,
        line,
        message: message.into(),
    }
}

pub fn read_obj(reader: impl BufRead) -> Result<TriangleSoup, MeshError> {
    let mut soup = TriangleSoup::default();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut p = [0.0; 3];
                for c in p.iter_mut() {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| parse_err("OBJ", lineno, "vertex needs three coordinates"))?;
                    *c = tok
                        .parse()
                        .map_err(|_| parse_err("OBJ", lineno, format!("bad coordinate `{tok}`")))?;
                }
                soup.positions.push(p);
            }
            Some("f") => {
                let mut idx = Vec::with_capacity(3);
                for tok in tokens {
                    let head = tok.split('/').next().unwrap_or("");
                    let raw: i64 = head
                        .parse()
                        .map_err(|_| parse_err("OBJ", lineno, format!("bad face index `{tok}`")))?;
                    let n = soup.positions.len() as i64;
                    let resolved = match raw {
                        0 => return Err(parse_err("OBJ", lineno, "face index 0 is invalid")),
                        r if r > 0 => r - 1,
                        r => n + r,
                    };
                    if resolved < 0 {
                        return Err(parse_err("OBJ", lineno, format!("face index {raw} out of range")));
                    }
                    idx.push(resolved as usize);
                }
                if idx.len() != 3 {
                    return Err(MeshError::NonTriangleFace {
                        face: soup.faces.len(),
                        count: idx.len(),
                    });
                }
                soup.faces.push([idx[0], idx[1], idx[2]]);
            }
            _ => {}
        }
    }
    Ok(soup)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Scalar {
    I8,
    U8,
    I16,
    U16,
    I32,
    U32,
    F32,
    F64,
}

impl Scalar {
    fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "char" | "int8" => Scalar::I8,
            "uchar" | "uint8" => Scalar::U8,
            "short" | "int16" => Scalar::I16,
            "ushort" | "uint16" => Scalar::U16,
            "int" | "int32" => Scalar::I32,
            "uint" | "uint32" => Scalar::U32,
            "float" | "float32" => Scalar::F32,
            "double" | "float64" => Scalar::F64,
            _ => return None,
        })
    }

    fn read_le(self, r: &mut impl Read) -> std::io::Result<f64> {
        macro_rules! rd {
            ($t:ty, $n:expr) => {{
                let mut b = [0u8; $n];
                r.read_exact(&mut b)?;
                <$t>::from_le_bytes(b) as f64
            }};
        }
        Ok(match self {
            Scalar::I8 => rd!(i8, 1),
            Scalar::U8 => rd!(u8, 1),
            Scalar::I16 => rd!(i16, 2),
            Scalar::U16 => rd!(u16, 2),
            Scalar::I32 => rd!(i32, 4),
            Scalar::U32 => rd!(u32, 4),
            Scalar::F32 => rd!(f32, 4),
            Scalar::F64 => rd!(f64, 8),
        })
    }
}

#[derive(Clone, Debug)]
enum Property {
    Scalar { name: String, ty: Scalar },
    List { name: String, count: Scalar, item: Scalar },
}

#[derive(Clone, Debug)]
struct Element {
    name: String,
    count: usize,
    properties: Vec<Property>,
}

fn read_header_line(reader: &mut impl BufRead, lineno: &mut usize) -> Result<String, MeshError> {
    let mut line = String::new();
    if reader.read_line(&mut line)? == 0 {
        return Err(parse_err("PLY", *lineno, "unexpected end of header"));
    }
    *lineno += 1;
    Ok(line.trim_end().to_string())
}

pub fn read_ply(mut reader: impl BufRead) -> Result<TriangleSoup, MeshError> {
    let mut lineno = 0;
    if read_header_line(&mut reader, &mut lineno)? != "ply" {
        return Err(parse_err("PLY", 1, "missing `ply` magic"));
    }
    let mut encoding = None;
    let mut elements: Vec<Element> = Vec::new();
    loop {
        let line = read_header_line(&mut reader, &mut lineno)?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["format", "ascii", _] => encoding = Some(PlyEncoding::Ascii),
            ["format", "binary_little_endian", _] => encoding = Some(PlyEncoding::BinaryLittleEndian),
            ["format", other, ..] => {
                return Err(parse_err("PLY", lineno, format!("unsupported encoding `{other}`")))
            }
            ["comment", ..] | ["obj_info", ..] | [] => {}
            ["element", name, count] => {
                let count = count
                    .parse()
                    .map_err(|_| parse_err("PLY", lineno, "bad element count"))?;
                elements.push(Element {
                    name: name.to_string(),
                    count,
                    properties: Vec::new(),
                });
            }
            ["property", "list", count, item, name] => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| parse_err("PLY", lineno, "property before element"))?;
                let (Some(count), Some(item)) = (Scalar::parse(count), Scalar::parse(item)) else {
                    return Err(parse_err("PLY", lineno, "unknown list type"));
                };
                el.properties.push(Property::List {
                    name: name.to_string(),
                    count,
                    item,
                });
            }
            ["property", ty, name] => {
                let el = elements
                    .last_mut()
                    .ok_or_else(|| parse_err("PLY", lineno, "property before element"))?;
                let ty = Scalar::parse(ty)
                    .ok_or_else(|| parse_err("PLY", lineno, format!("unknown type `{ty}`")))?;
                el.properties.push(Property::Scalar {
                    name: name.to_string(),
                    ty,
                });
            }
            ["end_header"] => break,
            _ => return Err(parse_err("PLY", lineno, format!("unrecognized header line `{line}`"))),
        }
    }
    let encoding = encoding.ok_or_else(|| parse_err("PLY", lineno, "missing format line"))?;

    let mut soup = TriangleSoup::default();
    let mut ascii_lines = None;
    if encoding == PlyEncoding::Ascii {
        let mut body = String::new();
        reader.read_to_string(&mut body)?;
        ascii_lines = Some(
            body.lines()
                .map(str::to_string)
                .filter(|l| !l.trim().is_empty())
                .collect::<Vec<_>>()
                .into_iter(),
        );
    }

    for el in &elements {
        let coord_slots: Vec<Option<usize>> = el
            .properties
            .iter()
            .map(|p| match p {
                Property::Scalar { name, .. } => match name.as_str() {
                    "x" => Some(0),
                    "y" => Some(1),
                    "z" => Some(2),
                    _ => None,
                },
                Property::List { .. } => None,
            })
            .collect();
        for _ in 0..el.count {
            let mut record: Vec<Vec<f64>> = Vec::with_capacity(el.properties.len());
            match ascii_lines.as_mut() {
                Some(lines) => {
                    lineno += 1;
                    let line = lines
                        .next()
                        .ok_or_else(|| parse_err("PLY", lineno, "unexpected end of data"))?;
                    let mut toks = line.split_whitespace().map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| parse_err("PLY", lineno, format!("bad number `{t}`")))
                    });
                    let mut next = || toks.next().unwrap_or_else(|| Err(parse_err("PLY", lineno, "short record")));
                    for p in &el.properties {
                        match p {
                            Property::Scalar { .. } => record.push(vec![next()?]),
                            Property::List { .. } => {
                                let n = next()? as usize;
                                let items = (0..n).map(|_| next()).collect::<Result<Vec<_>, _>>()?;
                                record.push(items);
                            }
                        }
                    }
                }
                None => {
                    for p in &el.properties {
                        match p {
                            Property::Scalar { ty, .. } => record.push(vec![ty.read_le(&mut reader)?]),
                            Property::List { count, item, .. } => {
                                let n = count.read_le(&mut reader)? as usize;
                                let items = (0..n)
                                    .map(|_| item.read_le(&mut reader))
                                    .collect::<Result<Vec<_>, _>>()?;
                                record.push(items);
                            }
                        }
                    }
                }
            }

            match el.name.as_str() {
                "vertex" => {
                    let mut p = [0.0; 3];
                    let mut seen = 0;
                    for (slot, value) in coord_slots.iter().zip(&record) {
                        if let Some(s) = slot {
                            p[*s] = value[0];
                            seen += 1;
                        }
                    }
                    if seen != 3 {
                        return Err(parse_err("PLY", lineno, "vertex element lacks x/y/z"));
                    }
                    soup.positions.push(p);
                }
                "face" => {
                    let list = el
                        .properties
                        .iter()
                        .zip(&record)
                        .find(|(p, _)| {
                            matches!(p, Property::List { name, .. } if name == "vertex_indices" || name == "vertex_index")
                        })
                        .map(|(_, v)| v)
                        .ok_or_else(|| parse_err("PLY", lineno, "face element lacks vertex_indices"))?;
                    if list.len() != 3 {
                        return Err(MeshError::NonTriangleFace {
                            face: soup.faces.len(),
                            count: list.len(),
                        });
                    }
                    let mut tri = [0usize; 3];
                    for (t, &v) in tri.iter_mut().zip(list) {
                        if v < 0.0 || v.fract() != 0.0 {
                            return Err(parse_err("PLY", lineno, format!("bad vertex index {v}")));
                        }
                        *t = v as usize;
                    }
                    soup.faces.push(tri);
                }
                _ => {}
            }
        }
    }
    Ok(soup)
}

/// Writes vertex positions (as `double`) and faces, plus an optional
/// per-vertex `geodesic_distance` property.
pub fn write_ply(
    mut w: impl Write,
    mesh: &SurfaceMesh,
    distances: Option<&[f64]>,
    encoding: PlyEncoding,
) -> Result<(), MeshError> {
    writeln!(w, "ply")?;
    match encoding {
        PlyEncoding::Ascii => writeln!(w, "format ascii 1.0")?,
        PlyEncoding::BinaryLittleEndian => writeln!(w, "format binary_little_endian 1.0")?,
    }
    writeln!(w, "element vertex {}", mesh.num_vertices())?;
    writeln!(w, "property double x")?;
    writeln!(w, "property double y")?;
    writeln!(w, "property double z")?;
    if distances.is_some() {
        writeln!(w, "property double geodesic_distance")?;
    }
    writeln!(w, "element face {}", mesh.num_faces())?;
    writeln!(w, "property list uchar int vertex_indices")?;
    writeln!(w, "end_header")?;

    for (v, p) in mesh.positions().iter().enumerate() {
        let extra = distances.map(|d| d[v]);
        match encoding {
            PlyEncoding::Ascii => {
                write!(w, "{:e} {:e} {:e}", p[0], p[1], p[2])?;
                if let Some(d) = extra {
                    write!(w, " {d:e}")?;
                }
                writeln!(w)?;
            }
            PlyEncoding::BinaryLittleEndian => {
                for c in p {
                    w.write_all(&c.to_le_bytes())?;
                }
                if let Some(d) = extra {
                    w.write_all(&d.to_le_bytes())?;
                }
            }
        }
    }
    for f in mesh.faces() {
        match encoding {
            PlyEncoding::Ascii => writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?,
            PlyEncoding::BinaryLittleEndian => {
                w.write_all(&[3u8])?;
                for v in f {
                    w.write_all(&(v as i32).to_le_bytes())?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn save_ply(
    path: impl AsRef<Path>,
    mesh: &SurfaceMesh,
    distances: Option<&[f64]>,
    encoding: PlyEncoding,
) -> Result<(), MeshError> {
    write_ply(BufWriter::new(File::create(path)?), mesh, distances, encoding)
}

pub fn write_obj(mut w: impl Write, mesh: &SurfaceMesh) -> Result<(), MeshError> {
    for p in mesh.positions() {
        writeln!(w, "v {:e} {:e} {:e}", p[0], p[1], p[2])?;
    }
    for f in mesh.faces() {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_obj(path: impl AsRef<Path>, mesh: &SurfaceMesh) -> Result<(), MeshError> {
    write_obj(BufWriter::new(File::create(path)?), mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn same_lengths(a: &SurfaceMesh, b: &SurfaceMesh) {
        assert_eq!(a.num_half_edges(), b.num_half_edges());
        for (x, y) in a.half_edges().iter().zip(b.half_edges()) {
            assert_eq!(x.length, y.length);
            assert_eq!(x.opposite, y.opposite);
        }
    }

    #[test]
    fn obj_single_triangle() {
        let src = "# tri\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1/1 2/2/2 3/3/3\n";
        let mesh = read_obj(src.as_bytes()).unwrap().into_mesh().unwrap();
        assert_eq!(mesh.num_faces(), 1);
        assert_eq!(mesh.length(0), 1.0);
        assert!((mesh.length(1) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn obj_negative_indices() {
        let src = "v 0 0 0\nv 1 0 0\nv 0 1 0\nf -3 -2 -1\n";
        let soup = read_obj(src.as_bytes()).unwrap();
        assert_eq!(soup.faces, vec![[0, 1, 2]]);
    }

    #[test]
    fn obj_quad_is_rejected() {
        let src = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
        let err = read_obj(src.as_bytes()).unwrap_err();
        assert!(err.to_string().contains("non-triangle face"), "{err}");
    }

    #[test]
    fn obj_malformed_coordinate() {
        let err = read_obj("v 0 zero 0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, MeshError::Parse { line: 1, .. }));
    }

    #[test]
    fn ply_round_trip_both_encodings() {
        let mesh = shapes::bumpy_sphere(1, 0.1);
        let dist: Vec<f64> = (0..mesh.num_vertices()).map(|v| v as f64 / 7.0).collect();
        for enc in [PlyEncoding::Ascii, PlyEncoding::BinaryLittleEndian] {
            let mut buf = Vec::new();
            write_ply(&mut buf, &mesh, Some(&dist), enc).unwrap();
            let back = read_ply(buf.as_slice()).unwrap().into_mesh().unwrap();
            same_lengths(&mesh, &back);
        }
    }

    #[test]
    fn obj_round_trip_preserves_lengths() {
        let mesh = shapes::torus(1.0, 0.3, 9, 7);
        let mut buf = Vec::new();
        write_obj(&mut buf, &mesh).unwrap();
        let back = read_obj(buf.as_slice()).unwrap().into_mesh().unwrap();
        same_lengths(&mesh, &back);
    }

    #[test]
    fn ply_float32_and_extra_properties() {
        let mut buf = Vec::new();
        buf.extend_from_slice(
            b"ply\nformat binary_little_endian 1.0\ncomment test\nelement vertex 3\n\
property float x\nproperty float y\nproperty float z\nproperty uchar red\n\
element face 1\nproperty list uchar uint vertex_indices\nproperty int flags\nend_header\n",
        );
        for p in [[0f32, 0.0, 0.0], [2.0, 0.0, 0.0], [0.0, 2.0, 0.0]] {
            for c in p {
                buf.extend_from_slice(&c.to_le_bytes());
            }
            buf.push(255);
        }
        buf.push(3);
        for v in [0u32, 1, 2] {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        buf.extend_from_slice(&7i32.to_le_bytes());
        let mesh = read_ply(buf.as_slice()).unwrap().into_mesh().unwrap();
        assert_eq!(mesh.length(0), 2.0);
    }

    #[test]
    fn load_mesh_detects_format_from_extension() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cube.obj");
        save_obj(&path, &shapes::cube()).unwrap();
        let mesh = load_mesh(&path, None).unwrap();
        assert_eq!(mesh.num_faces(), 12);
        assert!(matches!(
            load_mesh(dir.path().join("cube.stl"), None),
            Err(MeshError::UnsupportedFormat(_))
        ));
    }
}
