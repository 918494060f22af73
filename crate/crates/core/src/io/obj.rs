//! Wavefront OBJ with `o`, `v` and `f` records only.
//!
//! Each tetrahedron is its own object with its own four vertices; faces are
//! outward and counterclockwise.

use crate::aggregate::Aggregate;
use crate::error::{Error, Result};
use crate::geom::{Point3, Tetrahedron};
use crate::io::json::format_g17;

pub fn aggregate_to_obj(agg: &Aggregate) -> String {
    let mut out = String::new();
    for (k, t) in agg.tetrahedra.iter().enumerate() {
        out.push_str(&format!("o tet_{}\n", t.id));
        for p in &t.vertices {
            out.push_str(&format!("v {} {} {}\n", format_g17(p.x), format_g17(p.y), format_g17(p.z)));
        }
        let base = 4 * k + 1;
        for face in 0..4 {
            let [i, j, l] = Tetrahedron::face_labels(face);
            out.push_str(&format!("f {} {} {}\n", base + i, base + j, base + l));
        }
    }
    out
}

/// A parsed OBJ file. Face indices are zero-based.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ObjMesh {
    pub vertices: Vec<Point3>,
    pub faces: Vec<Vec<usize>>,
    /// Object names with the index of their first face.
    pub objects: Vec<(String, usize)>,
}

impl ObjMesh {
    /// Distinct undirected edge lengths over all faces.
    pub fn edge_lengths(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for f in &self.faces {
            for i in 0..f.len() {
                let (p, q) = (f[i], f[(i + 1) % f.len()]);
                out.push((self.vertices[p] - self.vertices[q]).norm());
            }
        }
        out
    }
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

/// Reads `o`, `v` and `f` records; blank lines and `#` comments are skipped,
/// anything else is an error. Face tokens may carry `/vt/vn` suffixes, which
/// are ignored.
pub fn parse_obj(text: &str) -> Result<ObjMesh> {
    let mut mesh = ObjMesh::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut tokens = raw.split_whitespace();
        match tokens.next() {
            None => {}
            Some(t) if t.starts_with('#') => {}
            Some("o") => {
                let name = tokens.collect::<Vec<_>>().join(" ");
                mesh.objects.push((name, mesh.faces.len()));
            }
            Some("v") => {
                let coords = tokens
                    .map(|s| s.parse::<f64>().map_err(|e| parse_err(line, e)))
                    .collect::<Result<Vec<_>>>()?;
                if coords.len() < 3 {
                    return Err(parse_err(line, "vertex needs three coordinates"));
                }
                mesh.vertices.push(Point3::new(coords[0], coords[1], coords[2]));
            }
            Some("f") => {
                let face = tokens
                    .map(|s| {
                        let index: usize = s
                            .split('/')
                            .next()
                            .unwrap_or("")
                            .parse()
                            .map_err(|e| parse_err(line, e))?;
                        if index == 0 || index > mesh.vertices.len() {
                            return Err(parse_err(line, format!("vertex index {index} out of range")));
                        }
                        Ok(index - 1)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if face.len() < 3 {
                    return Err(parse_err(line, "face needs three vertices"));
                }
                mesh.faces.push(face);
            }
            Some(other) => return Err(parse_err(line, format!("unsupported record `{other}`"))),
        }
    }
    Ok(mesh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::{build_edge_ring, twist_edge_ring};

    #[test]
    fn twisted_ring_counts() {
        let agg = twist_edge_ring(&build_edge_ring(5, 1.0).unwrap()).unwrap();
        let mesh = parse_obj(&aggregate_to_obj(&agg)).unwrap();
        assert_eq!(mesh.vertices.len(), 20);
        assert_eq!(mesh.faces.len(), 20);
        assert_eq!(mesh.objects.len(), 5);
        assert_eq!(mesh.objects[3], ("tet_3".to_string(), 12));
        for l in mesh.edge_lengths() {
            assert!((l - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn faces_point_outward() {
        let agg = build_edge_ring(4, 2.0).unwrap();
        let mesh = parse_obj(&aggregate_to_obj(&agg)).unwrap();
        for (k, f) in mesh.faces.iter().enumerate() {
            let t = &agg.tetrahedra[k / 4];
            let [a, b, c] = [f[0], f[1], f[2]].map(|i| mesh.vertices[i]);
            let n = (b - a).cross(&(c - a));
            assert!(n.dot(&(a - t.centroid())) > 0.0);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_obj("v 0 0 0\nf 1 2 3\n").is_err());
        assert!(parse_obj("vn 0 0 1\n").is_err());
        assert!(parse_obj("v 0 x 0\n").unwrap_err().to_string().contains("line 1"));
        let mesh = parse_obj("# c\nv 0 0 0\nv 1 0 0\nv 0 1 0\nf 1/1 2/2 3/3\n").unwrap();
        assert_eq!(mesh.faces, vec![vec![0, 1, 2]]);
    }
}
