//! Convex clipping: intersection volume of two tetrahedra and overlap area of
//! two planar convex polygons.

use crate::geom::{Plane, Point3, Tetrahedron, Vec3};

type Polygon3 = Vec<Point3>;

/// Distances below this count as on the plane.
const ON_PLANE: f64 = 1e-12;

fn snapped_distance(plane: &Plane, p: &Point3) -> f64 {
    let d = plane.signed_distance(p);
    if d.abs() < ON_PLANE {
        0.0
    } else {
        d
    }
}

/// Clips a closed convex polyhedron (list of faces) to `plane.signed_distance <= 0`.
fn clip_polyhedron(faces: Vec<Polygon3>, plane: &Plane) -> Vec<Polygon3> {
    let mut out = Vec::with_capacity(faces.len() + 1);
    let mut cut: Vec<Point3> = Vec::new();
    // A face already lying in the plane is its own cap.
    let mut capped = false;
    for face in faces {
        if face.iter().all(|p| snapped_distance(plane, p) == 0.0) {
            capped = true;
            out.push(face);
            continue;
        }
        let mut kept = Vec::with_capacity(face.len() + 1);
        for i in 0..face.len() {
            let p = face[i];
            let q = face[(i + 1) % face.len()];
            let dp = snapped_distance(plane, &p);
            let dq = snapped_distance(plane, &q);
            if dp <= 0.0 {
                kept.push(p);
                if dp == 0.0 {
                    cut.push(p);
                }
            }
            if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
                let x = p + (q - p) * (dp / (dp - dq));
                kept.push(x);
                cut.push(x);
            }
        }
        if kept.len() >= 3 {
            out.push(kept);
        }
    }
    if !capped {
        if let Some(cap) = cap_polygon(cut, plane) {
            out.push(cap);
        }
    }
    out
}

/// Orders the cut points on `plane` into a convex polygon.
fn cap_polygon(pts: Vec<Point3>, plane: &Plane) -> Option<Polygon3> {
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let c = Point3::from(pts.iter().fold(Vec3::zeros(), |s, p| s + p.coords) / n);
    let e1 = plane.normal.cross(&Vec3::x()).try_normalize(1e-6).unwrap_or_else(|| {
        plane.normal.cross(&Vec3::y()).normalize()
    });
    let e2 = plane.normal.cross(&e1);
    let mut keyed: Vec<(f64, Point3)> = pts
        .into_iter()
        .map(|p| {
            let d = p - c;
            (d.dot(&e2).atan2(d.dot(&e1)), p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut ring: Polygon3 = keyed.into_iter().map(|(_, p)| p).collect();
    ring.dedup_by(|a, b| (*a - *b).norm() < 1e-14);
    (ring.len() >= 3).then_some(ring)
}

/// Volume of a closed convex polyhedron given by its faces.
fn polyhedron_volume(faces: &[Polygon3]) -> f64 {
    let count = faces.iter().map(Vec::len).sum::<usize>();
    if count == 0 {
        return 0.0;
    }
    let c = faces
        .iter()
        .flatten()
        .fold(Vec3::zeros(), |s, p| s + p.coords)
        / count as f64;
    let mut vol = 0.0;
    for face in faces {
        for i in 1..face.len().saturating_sub(1) {
            let a = face[0].coords - c;
            let b = face[i].coords - c;
            let d = face[i + 1].coords - c;
            vol += a.cross(&b).dot(&d).abs() / 6.0;
        }
    }
    vol
}

fn tetrahedron_faces(t: &Tetrahedron) -> Vec<Polygon3> {
    (0..4).map(|f| t.face_vertices(f).to_vec()).collect()
}

/// Volume of `a ∩ b`.
pub fn intersection_volume(a: &Tetrahedron, b: &Tetrahedron) -> f64 {
    // Cheap rejection on bounding spheres.
    let reach = (a.edge_length + b.edge_length) * 6f64.sqrt() / 4.0;
    if (a.centroid() - b.centroid()).norm() > reach {
        return 0.0;
    }
    let mut faces = tetrahedron_faces(a);
    for f in 0..4 {
        let plane = b.face_plane(f).expect("regular tetrahedron");
        faces = clip_polyhedron(faces, &plane);
        if faces.is_empty() {
            return 0.0;
        }
    }
    polyhedron_volume(&faces)
}

/// Signed area of a 2D polygon (positive when counterclockwise).
pub fn polygon_area(poly: &[[f64; 2]]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let p = poly[i];
            let q = poly[(i + 1) % n];
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
        / 2.0
}

/// Intersection of two convex polygons; `clip` must be counterclockwise.
pub fn convex_polygon_intersection(subject: &[[f64; 2]], clip: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut out = subject.to_vec();
    for i in 0..clip.len() {
        if out.is_empty() {
            break;
        }
        let a = clip[i];
        let b = clip[(i + 1) % clip.len()];
        // Positive on the inner (left) side of edge a→b.
        let side = |p: [f64; 2]| (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let p = input[j];
            let q = input[(j + 1) % input.len()];
            let sp = side(p);
            let sq = side(q);
            if sp >= 0.0 {
                out.push(p);
            }
            if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
                let t = sp / (sp - sq);
                out.push([p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]);
            }
        }
    }
    out
}

/// Overlap area of two convex polygons of either orientation.
pub fn overlap_area(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let ccw = |p: &[[f64; 2]]| {
        let mut v = p.to_vec();
        if polygon_area(&v) < 0.0 {
            v.reverse();
        }
        v
    };
    let inter = convex_polygon_intersection(&ccw(a), &ccw(b));
    if inter.len() < 3 {
        0.0
    } else {
        polygon_area(&inter).abs()
    }
}
