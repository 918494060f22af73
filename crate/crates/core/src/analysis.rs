//! Plane classes, face junctions and the δ displacement family.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::aggregate::{self, Aggregate};
use crate::error::{Error, Result};
use crate::geom::{Direction3, FaceRef, Plane, Point3, ToleranceConfig, Vec3};
use crate::golden;
use crate::helix::{self, HelixSpec};
use crate::polytope;

/// Minimum overlap area, in units of a², for two coplanar faces to count as a
/// junction rather than an edge contact.
pub const MIN_JUNCTION_OVERLAP: f64 = 1e-6;

const THIRD_TURN: f64 = 2.0 * PI / 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PlaneClass {
    pub representative: Direction3,
    pub members: Vec<FaceRef>,
}

/// Faces grouped by the orientation of their planes.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneClassPartition {
    pub classes: Vec<PlaneClass>,
    pub count: usize,
}

/// Sign-normalized copy of `n`: the first clearly nonzero component is
/// positive.
fn canonical_normal(n: &Direction3) -> Direction3 {
    let v = n.into_inner();
    let first = v.iter().copied().find(|c| c.abs() > 1e-6).unwrap_or(1.0);
    if first < 0.0 {
        -*n
    } else {
        *n
    }
}

/// Partitions all faces of `agg` into classes of parallel (or antiparallel)
/// normals.
pub fn plane_classes(agg: &Aggregate, tol: &ToleranceConfig) -> PlaneClassPartition {
    let mut classes: Vec<PlaneClass> = Vec::new();
    for t in &agg.tetrahedra {
        for face in t.faces() {
            let normal = t
                .face_plane(face.face_index)
                .expect("validated tetrahedron")
                .normal;
            match classes
                .iter_mut()
                .find(|c| c.representative.cross(&normal).norm() < tol.parallel_tol)
            {
                Some(class) => class.members.push(face),
                None => classes.push(PlaneClass {
                    representative: canonical_normal(&normal),
                    members: vec![face],
                }),
            }
        }
    }
    classes.sort_by(|a, b| {
        let (p, q) = (a.representative, b.representative);
        p.x.total_cmp(&q.x)
            .then(p.y.total_cmp(&q.y))
            .then(p.z.total_cmp(&q.z))
    });
    PlaneClassPartition {
        count: classes.len(),
        classes,
    }
}

/// The in-plane displacement unit a / (2φ²√6).
pub fn delta(a: f64) -> f64 {
    a / (2.0 * golden::phi().powi(2) * 6f64.sqrt())
}

/// Two coincident faces of distinct tetrahedra.
///
/// `plane` is the lower-id face's plane, its normal pointing from the
/// lower-id tetrahedron into the higher-id one.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceJunction {
    pub faces: (FaceRef, FaceRef),
    pub plane: Plane,
    pub lower: [Point3; 3],
    pub upper: [Point3; 3],
    pub edge_length: f64,
    /// Counterclockwise turn in [0, 2π/3) taking the lower triangle's
    /// orientation to the upper one's.
    pub angle_raw: f64,
    /// `min(angle_raw, 2π/3 − angle_raw)`.
    pub angle_min: f64,
    /// Upper centroid minus lower centroid, within the plane.
    pub offset: Vec3,
    pub offset_in_delta: f64,
    /// Offset along the junction's reference axis, in δ units.
    pub signed_offset_in_delta: f64,
    /// Offset component across the reference axis, in δ units.
    pub transverse_offset_in_delta: f64,
    pub coplanarity_residual: f64,
    pub overlap_area: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JunctionSignature {
    pub angle_raw: f64,
    pub angle_min: f64,
    pub offset_in_delta: f64,
    pub signed_offset_in_delta: f64,
}

/// In-plane orthonormal frame `(e1, e2)` with `e1` toward the first lower
/// vertex and `e2 = normal × e1`.
fn junction_frame(normal: &Vec3, lower: &[Point3; 3]) -> (Point3, Vec3, Vec3) {
    let c = centroid3(lower);
    let d = lower[0] - c;
    let e1 = (d - normal * d.dot(normal)).normalize();
    (c, e1, normal.cross(&e1))
}

fn centroid3(p: &[Point3; 3]) -> Point3 {
    Point3::from((p[0].coords + p[1].coords + p[2].coords) / 3.0)
}

fn to_plane(p: &Point3, origin: &Point3, e1: &Vec3, e2: &Vec3) -> [f64; 2] {
    let d = p - origin;
    [d.dot(e1), d.dot(e2)]
}

/// Orientation of an equilateral triangle modulo 2π/3, from the circular
/// mean of its vertex directions.
fn triangle_orientation(points: &[Point3; 3], e1: &Vec3, e2: &Vec3) -> f64 {
    let c = centroid3(points);
    let (s, k) = points.iter().fold((0.0, 0.0), |(s, k), p| {
        let d = p - c;
        let theta = 3.0 * d.dot(e2).atan2(d.dot(e1));
        (s + theta.sin(), k + theta.cos())
    });
    s.atan2(k) / 3.0
}

struct Measured {
    angle_raw: f64,
    angle_min: f64,
    offset: Vec3,
    offset_in_delta: f64,
    signed_offset_in_delta: f64,
    transverse_offset_in_delta: f64,
    overlap_area: f64,
    /// Unit vector along the reference axis.
    reference: Vec3,
}

fn measure(normal: &Vec3, lower: &[Point3; 3], upper: &[Point3; 3], a: f64) -> Measured {
    let (origin, e1, e2) = junction_frame(normal, lower);
    let lower_angle = triangle_orientation(lower, &e1, &e2);
    let upper_angle = triangle_orientation(upper, &e1, &e2);
    let mut angle_raw = (upper_angle - lower_angle).rem_euclid(THIRD_TURN);
    if angle_raw >= THIRD_TURN {
        angle_raw = 0.0;
    }
    let angle_min = angle_raw.min(THIRD_TURN - angle_raw);

    let d = centroid3(upper) - origin;
    let offset = d - normal * d.dot(normal);
    let unit = delta(a);

    // Reference axis: in the frame where the upper triangle is turned
    // counterclockwise by angle_min, a quarter turn past the mean orientation
    // of the two triangles. Only its direction modulo 2π/3 matters, hence the
    // factor 3.
    let (sign, mean) = if angle_raw > PI / 3.0 {
        (-1.0, -lower_angle + angle_min / 2.0)
    } else {
        (1.0, lower_angle + angle_min / 2.0)
    };
    let psi = mean + FRAC_PI_2;
    let reference = e1 * psi.cos() + e2 * (sign * psi.sin());
    let magnitude = offset.norm();
    let (signed, transverse) = if magnitude > 1e-12 * a {
        let omega = (sign * offset.dot(&e2)).atan2(offset.dot(&e1));
        let phase = 3.0 * (omega - mean - FRAC_PI_2);
        (magnitude * phase.cos(), magnitude * phase.sin().abs())
    } else {
        (0.0, 0.0)
    };

    let lower2 = lower.map(|p| to_plane(&p, &origin, &e1, &e2));
    let upper2 = upper.map(|p| to_plane(&p, &origin, &e1, &e2));
    Measured {
        angle_raw,
        angle_min,
        offset,
        offset_in_delta: magnitude / unit,
        signed_offset_in_delta: signed / unit,
        transverse_offset_in_delta: transverse / unit,
        overlap_area: polytope::overlap_area(&lower2, &upper2),
        reference,
    }
}

fn try_junction(
    agg: &Aggregate,
    lower: FaceRef,
    upper: FaceRef,
    tol: &ToleranceConfig,
) -> Option<FaceJunction> {
    let a = agg.edge_length;
    let tl = &agg.tetrahedra[lower.tet_id];
    let tu = &agg.tetrahedra[upper.tet_id];
    let pl = tl.face_plane(lower.face_index).ok()?;
    let pu = tu.face_plane(upper.face_index).ok()?;
    if pl.normal.cross(&pu.normal).norm() >= tol.parallel_tol || pl.normal.dot(&pu.normal) >= 0.0 {
        return None;
    }
    let lower_pts = tl.face_vertices(lower.face_index);
    let upper_pts = tu.face_vertices(upper.face_index);
    let residual = upper_pts
        .iter()
        .map(|p| pl.signed_distance(p).abs())
        .fold(0.0, f64::max);
    if residual >= tol.point_abs(a) {
        return None;
    }
    if (centroid3(&lower_pts) - centroid3(&upper_pts)).norm() >= 2.0 * a / 3f64.sqrt() {
        return None;
    }
    let m = measure(&pl.normal, &lower_pts, &upper_pts, a);
    if m.overlap_area < MIN_JUNCTION_OVERLAP * a * a {
        return None;
    }
    Some(FaceJunction {
        faces: (lower, upper),
        plane: pl,
        lower: lower_pts,
        upper: upper_pts,
        edge_length: a,
        angle_raw: m.angle_raw,
        angle_min: m.angle_min,
        offset: m.offset,
        offset_in_delta: m.offset_in_delta,
        signed_offset_in_delta: m.signed_offset_in_delta,
        transverse_offset_in_delta: m.transverse_offset_in_delta,
        coplanarity_residual: residual,
        overlap_area: m.overlap_area,
    })
}

/// All coplanar, oppositely oriented, overlapping face pairs of distinct
/// tetrahedra, ordered by (lower face, upper face).
pub fn find_face_junctions(agg: &Aggregate, tol: &ToleranceConfig) -> Vec<FaceJunction> {
    let mut out = Vec::new();
    for (i, ti) in agg.tetrahedra.iter().enumerate() {
        for tj in &agg.tetrahedra[i + 1..] {
            for fi in ti.faces() {
                for fj in tj.faces() {
                    if let Some(j) = try_junction(agg, fi, fj, tol) {
                        out.push(j);
                    }
                }
            }
        }
    }
    out
}

/// Recomputes the signature from the junction's triangles.
pub fn junction_signature(j: &FaceJunction) -> Result<JunctionSignature> {
    let m = measure(&j.plane.normal, &j.lower, &j.upper, j.edge_length);
    if m.overlap_area < MIN_JUNCTION_OVERLAP * j.edge_length.powi(2) {
        return Err(Error::domain("junction triangles do not overlap"));
    }
    Ok(JunctionSignature {
        angle_raw: m.angle_raw,
        angle_min: m.angle_min,
        offset_in_delta: m.offset_in_delta,
        signed_offset_in_delta: m.signed_offset_in_delta,
    })
}

impl FaceJunction {
    pub fn signature(&self) -> JunctionSignature {
        JunctionSignature {
            angle_raw: self.angle_raw,
            angle_min: self.angle_min,
            offset_in_delta: self.offset_in_delta,
            signed_offset_in_delta: self.signed_offset_in_delta,
        }
    }

    /// The same junction with the roles of the two faces exchanged.
    pub fn swapped(&self) -> FaceJunction {
        let plane = self.plane.flipped();
        let m = measure(&plane.normal, &self.upper, &self.lower, self.edge_length);
        FaceJunction {
            faces: (self.faces.1, self.faces.0),
            plane,
            lower: self.upper,
            upper: self.lower,
            angle_raw: m.angle_raw,
            angle_min: m.angle_min,
            offset: m.offset,
            offset_in_delta: m.offset_in_delta,
            signed_offset_in_delta: m.signed_offset_in_delta,
            transverse_offset_in_delta: m.transverse_offset_in_delta,
            overlap_area: m.overlap_area,
            ..self.clone()
        }
    }
}

/// δ together with the in-plane reference axis its signed multiples are
/// measured along.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaUnit {
    pub delta: f64,
    pub direction: Direction3,
}

pub fn delta_unit(j: &FaceJunction) -> DeltaUnit {
    let m = measure(&j.plane.normal, &j.lower, &j.upper, j.edge_length);
    DeltaUnit {
        delta: delta(j.edge_length),
        direction: Direction3::new_normalize(m.reference),
    }
}

/// `j` with its upper face translated by `steps`·δ along the reference axis
/// and remeasured. The result may have zero overlap for large shifts.
pub fn shifted_junction(j: &FaceJunction, steps: f64) -> FaceJunction {
    let unit = delta_unit(j);
    let shift = unit.direction.into_inner() * (steps * unit.delta);
    let upper = j.upper.map(|p| p + shift);
    let m = measure(&j.plane.normal, &j.lower, &upper, j.edge_length);
    FaceJunction {
        upper,
        angle_raw: m.angle_raw,
        angle_min: m.angle_min,
        offset: m.offset,
        offset_in_delta: m.offset_in_delta,
        signed_offset_in_delta: m.signed_offset_in_delta,
        transverse_offset_in_delta: m.transverse_offset_in_delta,
        overlap_area: m.overlap_area,
        ..j.clone()
    }
}

/// Both triangles of a junction in plane coordinates: origin at the lower
/// centroid, x along the offset (or toward the first lower vertex when the
/// centroids coincide), y = normal × x.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JunctionProjection {
    pub lower: [[f64; 2]; 3],
    pub upper: [[f64; 2]; 3],
    pub upper_centroid: [f64; 2],
}

pub fn junction_projection(j: &FaceJunction) -> JunctionProjection {
    let normal = j.plane.normal.into_inner();
    let origin = centroid3(&j.lower);
    let x = if j.offset.norm() > 1e-9 * j.edge_length {
        j.offset.normalize()
    } else {
        junction_frame(&normal, &j.lower).1
    };
    let y = normal.cross(&x);
    JunctionProjection {
        lower: j.lower.map(|p| to_plane(&p, &origin, &x, &y)),
        upper: j.upper.map(|p| to_plane(&p, &origin, &x, &y)),
        upper_centroid: to_plane(&centroid3(&j.upper), &origin, &x, &y),
    }
}

/// The four junctions related by multiples of δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JunctionKind {
    Helix,
    Icosahedral,
    FiveRing,
    ThreeRing,
}

impl JunctionKind {
    pub const ALL: [JunctionKind; 4] = [
        JunctionKind::Helix,
        JunctionKind::Icosahedral,
        JunctionKind::FiveRing,
        JunctionKind::ThreeRing,
    ];

    /// Expected signed offset in δ units.
    pub fn expected_offset(&self) -> f64 {
        match self {
            JunctionKind::Helix => 0.0,
            JunctionKind::Icosahedral => -2.0,
            JunctionKind::FiveRing => 1.0,
            JunctionKind::ThreeRing => 3.0 * golden::phi() + 1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            JunctionKind::Helix => "helix",
            JunctionKind::Icosahedral => "icosahedral",
            JunctionKind::FiveRing => "five_ring",
            JunctionKind::ThreeRing => "three_ring",
        }
    }
}

/// Offset tolerance (δ units) and angle tolerance (radians) for the family.
pub const FAMILY_OFFSET_TOL: f64 = 1e-6;
pub const FAMILY_ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyEntry {
    pub kind: JunctionKind,
    pub angle_min: f64,
    pub offset_in_delta: f64,
    pub signed_offset_in_delta: f64,
    pub transverse_offset_in_delta: f64,
    pub expected_signed_offset: f64,
    pub passed: bool,
    pub diagnostic: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyReport {
    pub entries: Vec<FamilyEntry>,
    pub passed: bool,
}

/// Checks that the four junction kinds are turned by β and displaced by
/// 0, −2, 1 and 3φ+1 multiples of δ along a common axis.
pub fn verify_delta_family(junctions: &[(JunctionKind, FaceJunction)]) -> Result<FamilyReport> {
    let beta = golden::beta().radians;
    let mut entries = Vec::with_capacity(4);
    for kind in JunctionKind::ALL {
        let (_, j) = junctions
            .iter()
            .find(|(k, _)| *k == kind)
            .ok_or_else(|| Error::domain(format!("missing {} junction", kind.as_str())))?;
        let expected = kind.expected_offset();
        let mut problems = Vec::new();
        if (j.angle_min - beta).abs() >= FAMILY_ANGLE_TOL {
            problems.push(format!("angle_min {:.12} != beta {:.12}", j.angle_min, beta));
        }
        if (j.offset_in_delta - expected.abs()).abs() >= FAMILY_OFFSET_TOL {
            problems.push(format!(
                "|offset| {:.9} delta != {:.9} delta",
                j.offset_in_delta,
                expected.abs()
            ));
        }
        if (j.signed_offset_in_delta - expected).abs() >= FAMILY_OFFSET_TOL {
            problems.push(format!(
                "signed offset {:.9} delta != {:.9} delta",
                j.signed_offset_in_delta, expected
            ));
        }
        if j.transverse_offset_in_delta >= FAMILY_OFFSET_TOL {
            problems.push(format!(
                "offset leaves the reference axis by {:.9} delta",
                j.transverse_offset_in_delta
            ));
        }
        entries.push(FamilyEntry {
            kind,
            angle_min: j.angle_min,
            offset_in_delta: j.offset_in_delta,
            signed_offset_in_delta: j.signed_offset_in_delta,
            transverse_offset_in_delta: j.transverse_offset_in_delta,
            expected_signed_offset: expected,
            passed: problems.is_empty(),
            diagnostic: (!problems.is_empty()).then(|| problems.join("; ")),
        });
    }
    Ok(FamilyReport {
        passed: entries.iter().all(|e| e.passed),
        entries,
    })
}

/// First junction of each twisted aggregate and of a 5-BC helix, edge `a`.
pub fn standard_junctions(a: f64, tol: &ToleranceConfig) -> Result<Vec<(JunctionKind, FaceJunction)>> {
    let first = |agg: Aggregate, kind: JunctionKind| {
        find_face_junctions(&agg, tol)
            .into_iter()
            .next()
            .map(|j| (kind, j))
            .ok_or_else(|| Error::Structure(format!("no {} junction found", kind.as_str())))
    };
    Ok(vec![
        first(helix::build_modified_helix(&HelixSpec::five_bc(2, a))?, JunctionKind::Helix)?,
        first(
            aggregate::twist_icosahedral(&aggregate::build_icosahedral(a)?)?,
            JunctionKind::Icosahedral,
        )?,
        first(
            aggregate::twist_edge_ring(&aggregate::build_edge_ring(5, a)?)?,
            JunctionKind::FiveRing,
        )?,
        first(
            aggregate::twist_edge_ring(&aggregate::build_edge_ring(3, a)?)?,
            JunctionKind::ThreeRing,
        )?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::{build_edge_ring, build_icosahedral, twist_edge_ring, twist_icosahedral};
    use crate::geom::{RigidMotion, Tetrahedron};
    use crate::helix::{build_bc_helix, build_modified_helix, Chirality};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn single() -> Aggregate {
        Aggregate::new(
            crate::AggregateKind::BcHelix,
            1.0,
            Default::default(),
            vec![Tetrahedron::reference(0, 1.0)],
        )
        .unwrap()
    }

    #[test]
    fn delta_values() {
        // Frozen from a 40-digit evaluation of a / (2φ²√6).
        assert!((delta(1.0) - 0.077_968_485_554_078_05).abs() < 1e-15);
        assert!((delta(2.0) - 2.0 * delta(1.0)).abs() < 1e-15);
        assert!(((3.0 * golden::phi() + 1.0) * delta(1.0) - 0.456_435_464_587_638_4).abs() < 1e-15);
    }

    #[test]
    fn plane_class_examples() {
        assert_eq!(plane_classes(&single(), &tol()).count, 4);
        let ring = build_edge_ring(5, 1.0).unwrap();
        assert_eq!(plane_classes(&ring, &tol()).count, 20);
        assert_eq!(plane_classes(&twist_edge_ring(&ring).unwrap(), &tol()).count, 10);
        let ico = twist_icosahedral(&build_icosahedral(1.0).unwrap()).unwrap();
        assert_eq!(plane_classes(&ico, &tol()).count, 10);
        let bc = build_bc_helix(&HelixSpec::canonical(7, Chirality::Left, 1.0)).unwrap();
        assert_eq!(plane_classes(&bc, &tol()).count, 22);
    }

    #[test]
    fn partition_covers_every_face_once() {
        let ico = twist_icosahedral(&build_icosahedral(1.0).unwrap()).unwrap();
        let part = plane_classes(&ico, &tol());
        let mut seen: Vec<FaceRef> = part.classes.iter().flat_map(|c| c.members.clone()).collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 80);
        assert_eq!(part.classes.iter().map(|c| c.members.len()).sum::<usize>(), 80);
    }

    #[test]
    fn junction_counts() {
        let ring = build_edge_ring(5, 1.0).unwrap();
        assert!(find_face_junctions(&ring, &tol()).is_empty());
        let twisted = twist_edge_ring(&ring).unwrap();
        let js = find_face_junctions(&twisted, &tol());
        let mut pairs: Vec<_> = js.iter().map(|j| (j.faces.0.tet_id, j.faces.1.tet_id)).collect();
        pairs.sort();
        assert_eq!(pairs, twisted.expected_adjacent_pairs());
        let ico = twist_icosahedral(&build_icosahedral(1.0).unwrap()).unwrap();
        let js = find_face_junctions(&ico, &tol());
        let mut pairs: Vec<_> = js.iter().map(|j| (j.faces.0.tet_id, j.faces.1.tet_id)).collect();
        pairs.sort();
        assert_eq!(pairs, ico.expected_adjacent_pairs());
    }

    #[test]
    fn signatures() {
        let beta = golden::beta().radians;
        let phi = golden::phi();
        let five = find_face_junctions(&twist_edge_ring(&build_edge_ring(5, 1.0).unwrap()).unwrap(), &tol());
        for j in &five {
            assert!((j.angle_raw - beta).abs() < 1e-9);
            assert!((j.angle_min - beta).abs() < 1e-9);
            assert!((j.offset_in_delta - 1.0).abs() < 1e-9);
        }
        let three = find_face_junctions(&twist_edge_ring(&build_edge_ring(3, 1.0).unwrap()).unwrap(), &tol());
        for j in &three {
            assert!((j.angle_raw - (THIRD_TURN - beta)).abs() < 1e-9);
            assert!((j.angle_min - beta).abs() < 1e-9);
            assert!((j.offset_in_delta - (3.0 * phi + 1.0)).abs() < 1e-9);
        }
        let helix = build_modified_helix(&HelixSpec::five_bc(6, 1.0)).unwrap();
        for j in find_face_junctions(&helix, &tol()) {
            let s = junction_signature(&j).unwrap();
            assert!((s.angle_raw - beta).abs() < 1e-9);
            assert!(s.offset_in_delta.abs() < 1e-9);
        }
    }

    #[test]
    fn signature_independent_of_order() {
        for (_, j) in standard_junctions(1.0, &tol()).unwrap() {
            let s = j.swapped();
            assert!((s.angle_min - j.angle_min).abs() < 1e-12);
            assert!((s.angle_raw - j.angle_raw).abs() < 1e-12);
            assert!((s.offset_in_delta - j.offset_in_delta).abs() < 1e-12);
        }
    }

    #[test]
    fn signature_rejects_disjoint_triangles() {
        let mut j = standard_junctions(1.0, &tol()).unwrap().remove(0).1;
        let shift = j.plane.normal.cross(&Vec3::z()).normalize() * 3.0;
        j.upper = j.upper.map(|p| p + shift);
        assert!(matches!(junction_signature(&j), Err(Error::Domain(_))));
    }

    #[test]
    fn family_passes() {
        let report = verify_delta_family(&standard_junctions(1.0, &tol()).unwrap()).unwrap();
        assert!(report.passed, "{report:#?}");
        let report2 = verify_delta_family(&standard_junctions(2.0, &tol()).unwrap()).unwrap();
        for (e1, e2) in report.entries.iter().zip(&report2.entries) {
            assert!((e1.signed_offset_in_delta - e2.signed_offset_in_delta).abs() < 1e-9);
        }
    }

    #[test]
    fn family_detects_perturbation() {
        let mut js = standard_junctions(1.0, &tol()).unwrap();
        // Slide the upper face of the five-ring junction 1e-3·a within its plane.
        let (_, j) = js.iter_mut().find(|(k, _)| *k == JunctionKind::FiveRing).unwrap();
        let e = (j.lower[1] - j.lower[0]).normalize() * 1e-3;
        let moved: Vec<Point3> = j.upper.iter().map(|p| p + e).collect();
        let n = j.plane.normal.into_inner();
        let m = measure(&n, &j.lower, &[moved[0], moved[1], moved[2]], 1.0);
        j.offset_in_delta = m.offset_in_delta;
        j.signed_offset_in_delta = m.signed_offset_in_delta;
        j.transverse_offset_in_delta = m.transverse_offset_in_delta;
        let report = verify_delta_family(&js).unwrap();
        assert!(!report.passed);
        let bad = report.entries.iter().find(|e| !e.passed).unwrap();
        assert_eq!(bad.kind, JunctionKind::FiveRing);
        assert!(bad.diagnostic.is_some());
    }

    #[test]
    fn translating_the_helix_junction_gives_the_others() {
        let js = standard_junctions(1.0, &tol()).unwrap();
        let helix = &js.iter().find(|(k, _)| *k == JunctionKind::Helix).unwrap().1;
        for (kind, target) in &js {
            let moved = shifted_junction(helix, kind.expected_offset());
            assert!((moved.signed_offset_in_delta - kind.expected_offset()).abs() < 1e-9, "{kind:?}");
            assert!(moved.transverse_offset_in_delta < 1e-9);
            assert!((moved.angle_min - target.angle_min).abs() < 1e-12);
            // Congruent up to a rigid motion of the plane: same overlap area.
            assert!((moved.overlap_area - target.overlap_area).abs() < 1e-12, "{kind:?}");
        }
        let unit = delta_unit(helix);
        assert!(unit.direction.dot(&helix.plane.normal).abs() < 1e-12);
    }

    #[test]
    fn family_requires_all_kinds() {
        let mut js = standard_junctions(1.0, &tol()).unwrap();
        js.retain(|(k, _)| *k != JunctionKind::ThreeRing);
        assert!(matches!(verify_delta_family(&js), Err(Error::Domain(_))));
    }

    #[test]
    fn projections() {
        let js = standard_junctions(1.0, &tol()).unwrap();
        for (kind, j) in &js {
            let p = junction_projection(j);
            for tri in [p.lower, p.upper] {
                for v in tri {
                    let c = if tri == p.lower { [0.0, 0.0] } else { p.upper_centroid };
                    let r = (v[0] - c[0]).hypot(v[1] - c[1]);
                    assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-12);
                }
            }
            match kind {
                JunctionKind::Helix => assert!(p.upper_centroid[0].abs() < 1e-12),
                JunctionKind::FiveRing => {
                    assert!((p.upper_centroid[0] - delta(1.0)).abs() < 1e-12);
                    assert!(p.upper_centroid[1].abs() < 1e-12);
                }
                _ => assert!(p.upper_centroid[1].abs() < 1e-12),
            }
        }
    }

    #[test]
    fn plane_classes_invariant_under_motion() {
        let ico = twist_icosahedral(&build_icosahedral(1.0).unwrap()).unwrap();
        let m = RigidMotion::rotation_about_line(&Point3::new(1.0, 2.0, 3.0), &Vec3::new(0.2, 0.3, 1.0), 0.9).unwrap();
        assert_eq!(plane_classes(&ico.transformed(&m), &tol()).count, 10);
    }
}
