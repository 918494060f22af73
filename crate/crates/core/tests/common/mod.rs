//! Test oracles written without the library's face tables or clipping code.

#![allow(dead_code)]

use tetragold::aggregate::{self, TwistOptions};
use tetragold::geom::{Point3, RigidMotion, Vec3};
use tetragold::helix::{self, Chirality, HelixSpec};
use tetragold::{Aggregate, TwistSense};

/// Outward unit normal of the face opposite vertex `skip`, from raw
/// coordinates.
fn outward_normal(v: &[Point3; 4], skip: usize) -> (Vec3, [Point3; 3]) {
    let idx: Vec<usize> = (0..4).filter(|&i| i != skip).collect();
    let tri = [v[idx[0]], v[idx[1]], v[idx[2]]];
    let mut n = (tri[1] - tri[0]).cross(&(tri[2] - tri[0])).normalize();
    if n.dot(&(v[skip] - tri[0])) > 0.0 {
        n = -n;
    }
    (n, tri)
}

/// Smallest interval overlap over all edge normals of two planar triangles;
/// positive iff their interiors intersect.
fn separating_axis_depth(a: &[[f64; 2]; 3], b: &[[f64; 2]; 3]) -> f64 {
    let mut depth = f64::INFINITY;
    for tri in [a, b] {
        for i in 0..3 {
            let (p, q) = (tri[i], tri[(i + 1) % 3]);
            let axis = [q[1] - p[1], p[0] - q[0]];
            let len = axis[0].hypot(axis[1]);
            let proj = |t: &[[f64; 2]; 3]| {
                let vals = t.map(|r| (r[0] * axis[0] + r[1] * axis[1]) / len);
                (vals.iter().cloned().fold(f64::INFINITY, f64::min), vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
            };
            let (amin, amax) = proj(a);
            let (bmin, bmax) = proj(b);
            depth = depth.min(amax.min(bmax) - amin.max(bmin));
        }
    }
    depth
}

/// Exhaustive face-pair scan: `((tet, face), (tet, face))` with the lower
/// tetrahedron id first, for coplanar antiparallel faces whose interiors
/// overlap. `point_tol` is relative to the edge length.
pub fn oracle_junction_pairs(agg: &Aggregate, point_tol: f64) -> Vec<((usize, usize), (usize, usize))> {
    let a = agg.edge_length;
    let mut out = Vec::new();
    let t = &agg.tetrahedra;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            for fi in 0..4 {
                for fj in 0..4 {
                    let (ni, ti) = outward_normal(&t[i].vertices, fi);
                    let (nj, tj) = outward_normal(&t[j].vertices, fj);
                    if ni.dot(&nj) > -1.0 + 1e-12 {
                        continue;
                    }
                    if tj.iter().any(|p| ni.dot(&(p - ti[0])).abs() > point_tol * a) {
                        continue;
                    }
                    let e1 = (ti[1] - ti[0]).normalize();
                    let e2 = ni.cross(&e1);
                    let flat = |tri: &[Point3; 3]| tri.map(|p| [(p - ti[0]).dot(&e1), (p - ti[0]).dot(&e2)]);
                    if separating_axis_depth(&flat(&ti), &flat(&tj)) > 1e-6 * a {
                        out.push(((i, fi), (j, fj)));
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn library_junction_pairs(agg: &Aggregate, tol: &tetragold::ToleranceConfig) -> Vec<((usize, usize), (usize, usize))> {
    let mut out: Vec<_> = tetragold::analysis::find_face_junctions(agg, tol)
        .iter()
        .map(|j| ((j.faces.0.tet_id, j.faces.0.face_index), (j.faces.1.tet_id, j.faces.1.face_index)))
        .collect();
    out.sort_unstable();
    out
}

/// Every aggregate the library can build with at most six tetrahedra.
pub fn small_aggregates(a: f64) -> Vec<(String, Aggregate)> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let ring = aggregate::build_edge_ring(n, a).unwrap();
        for sense in [TwistSense::RightHanded, TwistSense::LeftHanded] {
            let opts = TwistOptions { sense, angle_override: None };
            out.push((format!("{n}-ring twisted {sense:?}"), aggregate::twist_edge_ring_with(&ring, opts).unwrap()));
        }
        out.push((format!("{n}-ring"), ring));
    }
    for count in 1..=6 {
        for c in [Chirality::Right, Chirality::Left] {
            out.push((
                format!("bc helix {count} {c:?}"),
                helix::build_bc_helix(&HelixSpec::canonical(count, c, a)).unwrap(),
            ));
            for sense in [Chirality::Right, Chirality::Left] {
                out.push((
                    format!("modified helix {count} {c:?}/{sense:?}"),
                    helix::build_modified_helix(&HelixSpec::modified(count, c, sense, a)).unwrap(),
                ));
            }
        }
    }
    out
}

pub fn motion(axis: [f64; 3], angle: f64, point: [f64; 3], shift: [f64; 3]) -> RigidMotion {
    RigidMotion::translation(Vec3::from(shift))
        .compose(&RigidMotion::rotation_about_line(&Point3::from(point), &Vec3::from(axis), angle).unwrap())
}
