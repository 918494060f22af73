//! Tolerance-aware 3D primitives: planes, rigid motions and regular
//! tetrahedra.

use nalgebra::{Matrix3, Rotation3, Unit};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point3 = nalgebra::Point3<f64>;
pub type Vec3 = nalgebra::Vector3<f64>;
/// Unit-norm direction.
pub type Direction3 = Unit<Vec3>;

/// Normalizes `v`, failing on a (numerically) zero vector.
pub fn direction(v: Vec3) -> Result<Direction3> {
    Unit::try_new(v, 1e-300).ok_or_else(|| Error::domain("zero-norm direction"))
}

/// Tolerances used by all comparisons. `point_tol` is relative to the edge
/// length; `parallel_tol` bounds the norm of the cross product of two unit
/// normals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub point_tol: f64,
    pub angle_tol: f64,
    pub parallel_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            point_tol: 1e-9,
            angle_tol: 1e-9,
            parallel_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn new(point_tol: f64, angle_tol: f64, parallel_tol: f64) -> Result<Self> {
        for (name, v) in [
            ("point_tol", point_tol),
            ("angle_tol", angle_tol),
            ("parallel_tol", parallel_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(Self {
            point_tol,
            angle_tol,
            parallel_tol,
        })
    }

    /// Every tolerance multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            point_tol: self.point_tol * factor,
            angle_tol: self.angle_tol * factor,
            parallel_tol: self.parallel_tol * factor,
        }
    }

    /// Absolute point tolerance for edge length `a`.
    pub fn point_abs(&self, a: f64) -> f64 {
        self.point_tol * a
    }
}

/// Oriented plane `{p : normal·p = offset}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub normal: Direction3,
    pub offset: f64,
}

impl Plane {
    pub fn new(normal: Direction3, point: &Point3) -> Self {
        Self {
            normal,
            offset: normal.dot(&point.coords),
        }
    }

    /// Plane through three points, normal by the right-hand rule on `a, b, c`.
    // Negated comparisons also reject NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn through(a: &Point3, b: &Point3, c: &Point3) -> Result<Self> {
        let n = (b - a).cross(&(c - a));
        let scale = (b - a).norm() * (c - a).norm();
        if !(n.norm() > 1e-12 * scale) {
            return Err(Error::Invariant("degenerate triangle".into()));
        }
        Ok(Self::new(Unit::new_normalize(n), a))
    }

    pub fn signed_distance(&self, p: &Point3) -> f64 {
        self.normal.dot(&p.coords) - self.offset
    }

    pub fn contains(&self, p: &Point3, tol: f64) -> bool {
        self.signed_distance(p).abs() < tol
    }

    pub fn reflect(&self, p: &Point3) -> Point3 {
        p - self.normal.into_inner() * (2.0 * self.signed_distance(p))
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: -self.normal,
            offset: -self.offset,
        }
    }
}

/// Proper rigid motion `p ↦ rotation·p + translation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Rotation3<f64>,
    pub translation: Vec3,
}

impl Default for RigidMotion {
    fn default() -> Self {
        Self::identity()
    }
}

impl RigidMotion {
    pub fn identity() -> Self {
        Self {
            rotation: Rotation3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn translation(t: Vec3) -> Self {
        Self {
            rotation: Rotation3::identity(),
            translation: t,
        }
    }

    /// Right-handed rotation by `angle` about the line through `point` with
    /// direction `axis`.
    pub fn rotation_about_line(point: &Point3, axis: &Vec3, angle: f64) -> Result<Self> {
        let axis = direction(*axis)?;
        let rotation = Rotation3::from_axis_angle(&axis, angle);
        let translation = point.coords - rotation * point.coords;
        Ok(Self {
            rotation,
            translation,
        })
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        self.rotation * p + self.translation
    }

    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.rotation * v
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidMotion {
        let rotation = self.rotation.inverse();
        RigidMotion {
            rotation,
            translation: -(rotation * self.translation),
        }
    }

    pub fn powi(&self, k: u32) -> RigidMotion {
        (0..k).fold(RigidMotion::identity(), |acc, _| self.compose(&acc))
    }

    /// Largest deviation of `RᵀR` from the identity, and of `det R` from 1.
    pub fn orthonormality_residual(&self) -> f64 {
        let m = self.rotation.matrix();
        let gram = (m.transpose() * m - Matrix3::identity()).abs().max();
        gram.max((m.determinant() - 1.0).abs())
    }

    /// Best-fit proper motion carrying labeled points `from[i]` onto `to[i]`
    /// (Kabsch).
    pub fn fit(from: &[Point3], to: &[Point3]) -> Result<Self> {
        if from.len() != to.len() || from.len() < 3 {
            return Err(Error::domain("fit needs at least three matched point pairs"));
        }
        let n = from.len() as f64;
        let ca = from.iter().fold(Vec3::zeros(), |s, p| s + p.coords) / n;
        let cb = to.iter().fold(Vec3::zeros(), |s, p| s + p.coords) / n;
        let h = from
            .iter()
            .zip(to)
            .fold(Matrix3::zeros(), |h, (a, b)| h + (a.coords - ca) * (b.coords - cb).transpose());
        let svd = h.svd(true, true);
        let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
        let v = v_t.transpose();
        let d = (v * u.transpose()).determinant().signum();
        let r = v * Matrix3::from_diagonal(&Vec3::new(1.0, 1.0, d)) * u.transpose();
        let rotation = Rotation3::from_matrix_unchecked(r);
        Ok(Self {
            rotation,
            translation: cb - rotation * ca,
        })
    }

    /// Decomposes the motion into a rotation about an axis plus a translation
    /// along it. Rotations smaller than `angle_tol` are reported as pure
    /// translations.
    pub fn screw(&self, angle_tol: f64) -> Screw {
        // The quaternion keeps the axis well conditioned near a half turn,
        // where the skew part of the matrix vanishes.
        let q = nalgebra::UnitQuaternion::from_rotation_matrix(&self.rotation);
        let (axis, angle) = match q.axis_angle() {
            Some((axis, angle)) if angle >= angle_tol => (axis, angle),
            _ => return Screw::Translation(self.translation),
        };
        let pitch = axis.dot(&self.translation);
        let t_perp = self.translation - axis.into_inner() * pitch;
        let cot_half = 1.0 / (angle / 2.0).tan();
        let axis_point = Point3::from((t_perp + axis.cross(&t_perp) * cot_half) / 2.0);
        Screw::Rotation {
            axis_point,
            axis_dir: axis,
            angle,
            pitch,
        }
    }
}

/// Result of a screw decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Screw {
    /// Rotation by `angle ∈ (0, π]` about the line `axis_point + t·axis_dir`
    /// followed by translation `pitch·axis_dir`.
    Rotation {
        axis_point: Point3,
        axis_dir: Direction3,
        angle: f64,
        pitch: f64,
    },
    /// No measurable rotation.
    Translation(Vec3),
}

impl Screw {
    pub fn to_motion(&self) -> RigidMotion {
        match *self {
            Screw::Rotation {
                axis_point,
                axis_dir,
                angle,
                pitch,
            } => {
                let rotation = RigidMotion::rotation_about_line(&axis_point, &axis_dir, angle)
                    .expect("unit axis");
                RigidMotion::translation(axis_dir.into_inner() * pitch).compose(&rotation)
            }
            Screw::Translation(t) => RigidMotion::translation(t),
        }
    }
}

/// Face `face_index` of tetrahedron `tet_id`; face i is opposite vertex i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FaceRef {
    pub tet_id: usize,
    pub face_index: usize,
}

impl FaceRef {
    pub fn new(tet_id: usize, face_index: usize) -> Result<Self> {
        if face_index > 3 {
            return Err(Error::domain(format!("face index {face_index} not in 0..=3")));
        }
        Ok(Self {
            tet_id,
            face_index,
        })
    }
}

/// Regular, positively oriented tetrahedron with labeled vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Tetrahedron {
    pub id: usize,
    pub vertices: [Point3; 4],
    pub edge_length: f64,
}

/// Vertex labels of face `i`, ordered counterclockwise seen from outside a
/// positively oriented tetrahedron.
const FACE_LABELS: [[usize; 3]; 4] = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]];

impl Tetrahedron {
    /// Validates regularity (relative tolerance `rel_tol`) and positive
    /// orientation.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn new(id: usize, vertices: [Point3; 4], edge_length: f64, rel_tol: f64) -> Result<Self> {
        if !(edge_length > 0.0 && edge_length.is_finite()) {
            return Err(Error::domain(format!("edge length must be positive, got {edge_length}")));
        }
        let t = Self {
            id,
            vertices,
            edge_length,
        };
        let reg = t.regularity_residual();
        if !(reg < rel_tol * edge_length) {
            return Err(Error::Invariant(format!(
                "tetrahedron {id} is not regular (edge deviation {reg:e})"
            )));
        }
        let vol = t.signed_volume();
        let expected = Self::regular_volume(edge_length);
        if !((vol - expected).abs() < rel_tol * edge_length.powi(3)) {
            return Err(Error::Invariant(format!(
                "tetrahedron {id} is not positively oriented (signed volume {vol:e})"
            )));
        }
        Ok(t)
    }

    /// Reference tetrahedron: centroid at the origin, vertex 0 on +z, face 0
    /// parallel to the xy-plane.
    pub fn reference(id: usize, a: f64) -> Self {
        let circumradius = a * 6f64.sqrt() / 4.0;
        let base_radius = a / 3f64.sqrt();
        let z = -circumradius / 3.0;
        let half = 3f64.sqrt() / 2.0;
        Self {
            id,
            vertices: [
                Point3::new(0.0, 0.0, circumradius),
                Point3::new(base_radius, 0.0, z),
                Point3::new(-base_radius / 2.0, -base_radius * half, z),
                Point3::new(-base_radius / 2.0, base_radius * half, z),
            ],
            edge_length: a,
        }
    }

    pub fn regular_volume(a: f64) -> f64 {
        a.powi(3) / (6.0 * 2f64.sqrt())
    }

    pub fn signed_volume(&self) -> f64 {
        let [v0, v1, v2, v3] = &self.vertices;
        (v1 - v0).cross(&(v2 - v0)).dot(&(v3 - v0)) / 6.0
    }

    /// Largest |d − a| over the six edges.
    pub fn regularity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                let d = (self.vertices[i] - self.vertices[j]).norm();
                worst = worst.max((d - self.edge_length).abs());
            }
        }
        worst
    }

    pub fn centroid(&self) -> Point3 {
        Point3::from(self.vertices.iter().fold(Vec3::zeros(), |s, p| s + p.coords) / 4.0)
    }

    /// Labels of face `face`, counterclockwise seen from outside.
    pub fn face_labels(face: usize) -> [usize; 3] {
        FACE_LABELS[face]
    }

    pub fn face_vertices(&self, face: usize) -> [Point3; 3] {
        FACE_LABELS[face].map(|i| self.vertices[i])
    }

    pub fn face_centroid(&self, face: usize) -> Point3 {
        let [a, b, c] = self.face_vertices(face);
        Point3::from((a.coords + b.coords + c.coords) / 3.0)
    }

    /// Plane of face `face` with the normal pointing away from the opposite
    /// vertex.
    pub fn face_plane(&self, face: usize) -> Result<Plane> {
        if face > 3 {
            return Err(Error::domain(format!("face index {face} not in 0..=3")));
        }
        let [a, b, c] = self.face_vertices(face);
        let plane = Plane::through(&a, &b, &c)?;
        Ok(if plane.signed_distance(&self.vertices[face]) > 0.0 {
            plane.flipped()
        } else {
            plane
        })
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceRef> + '_ {
        (0..4).map(move |face_index| FaceRef {
            tet_id: self.id,
            face_index,
        })
    }

    pub fn transformed(&self, m: &RigidMotion) -> Self {
        Self {
            id: self.id,
            vertices: self.vertices.map(|p| m.apply(&p)),
            edge_length: self.edge_length,
        }
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    /// The tetrahedron on the other side of face `face`: the opposite vertex
    /// is reflected through the face plane and keeps its label; the two
    /// shared labels following it cyclically are swapped so the result stays
    /// positively oriented.
    pub fn append_mirror(&self, face: usize, new_id: usize) -> Result<Tetrahedron> {
        let plane = self.face_plane(face)?;
        let mut vertices = self.vertices;
        vertices[face] = plane.reflect(&self.vertices[face]);
        vertices.swap((face + 1) % 4, (face + 2) % 4);
        Ok(Tetrahedron {
            id: new_id,
            vertices,
            edge_length: self.edge_length,
        })
    }

    /// True when both tetrahedra have the same vertex set within `tol`,
    /// labels ignored.
    pub fn same_vertex_set(&self, other: &Tetrahedron, tol: f64) -> bool {
        matches_as_sets(&self.vertices, &other.vertices, tol)
    }
}

/// Bijective matching of two small point sets within `tol`.
pub fn matches_as_sets(a: &[Point3], b: &[Point3], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|p| {
        let hit = b
            .iter()
            .enumerate()
            .find(|(j, q)| !used[*j] && (p - *q).norm() < tol)
            .map(|(j, _)| j);
        match hit {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn close(a: &Point3, b: &Point3, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn reference_is_regular_and_positive() {
        let t = Tetrahedron::reference(0, 1.0);
        assert!(Tetrahedron::new(0, t.vertices, 1.0, 1e-12).is_ok());
        assert!(t.centroid().coords.norm() < 1e-15);
        let p0 = t.face_plane(0).unwrap();
        assert!((p0.normal.z + 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_tetrahedra() {
        let t = Tetrahedron::reference(0, 1.0);
        let mut flipped = t.vertices;
        flipped.swap(2, 3);
        assert!(matches!(
            Tetrahedron::new(0, flipped, 1.0, 1e-9),
            Err(Error::Invariant(_))
        ));
        let mut stretched = t.vertices;
        stretched[0].z += 0.1;
        assert!(Tetrahedron::new(0, stretched, 1.0, 1e-9).is_err());
        assert!(Tetrahedron::new(0, t.vertices, -1.0, 1e-9).is_err());
    }

    #[test]
    fn rotation_basics() {
        let o = Point3::origin();
        let z = Vec3::z();
        let id = RigidMotion::rotation_about_line(&o, &z, 0.0).unwrap();
        assert_eq!(id.apply(&Point3::new(1.0, 2.0, 3.0)), Point3::new(1.0, 2.0, 3.0));
        let full = RigidMotion::rotation_about_line(&Point3::new(1.0, -2.0, 0.5), &z, 2.0 * PI).unwrap();
        let p = Point3::new(0.3, 0.7, -1.1);
        assert!(close(&full.apply(&p), &p, 1e-12));
        let quarter = RigidMotion::rotation_about_line(&o, &z, FRAC_PI_2).unwrap();
        assert!(close(&quarter.apply(&Point3::new(1.0, 0.0, 0.0)), &Point3::new(0.0, 1.0, 0.0), 1e-12));
        assert!(RigidMotion::rotation_about_line(&o, &Vec3::zeros(), 1.0).is_err());
    }

    #[test]
    fn rotation_fixes_its_axis() {
        let point = Point3::new(1.0, 2.0, 3.0);
        let axis = Vec3::new(1.0, -1.0, 0.5);
        let m = RigidMotion::rotation_about_line(&point, &axis, 0.7).unwrap();
        let on_axis = point + axis * 2.5;
        assert!(close(&m.apply(&on_axis), &on_axis, 1e-12));
    }

    #[test]
    fn face_geometry() {
        let a = 1.0;
        let t = Tetrahedron::reference(0, a);
        let height = (2.0f64 / 3.0).sqrt() * a;
        let mut sum = Vec3::zeros();
        for i in 0..4 {
            let plane = t.face_plane(i).unwrap();
            assert!((plane.signed_distance(&t.vertices[i]) + height).abs() < 1e-12);
            sum += plane.normal.into_inner();
            for j in 0..4 {
                if i != j {
                    let other = t.face_plane(j).unwrap();
                    assert!((plane.normal.dot(&other.normal) + 1.0 / 3.0).abs() < 1e-12);
                }
            }
            // Counterclockwise labeling agrees with the outward normal.
            let [p, q, r] = t.face_vertices(i);
            assert!((q - p).cross(&(r - p)).dot(&plane.normal) > 0.0);
        }
        assert!(sum.norm() < 1e-12);
        assert!(t.face_plane(4).is_err());
    }

    #[test]
    fn append_mirror_properties() {
        let t = Tetrahedron::reference(0, 2.0);
        for f in 0..4 {
            let u = t.append_mirror(f, 1).unwrap();
            assert!(Tetrahedron::new(1, u.vertices, 2.0, 1e-9).is_ok());
            let shared: Vec<_> = t.face_vertices(f).to_vec();
            let u_shared: Vec<_> = u.face_vertices(f).to_vec();
            assert!(matches_as_sets(&shared, &u_shared, 1e-12));
            let back = u.append_mirror(f, 2).unwrap();
            assert!(back.same_vertex_set(&t, 1e-12));
            let n0 = t.face_plane(f).unwrap().normal;
            let n1 = u.face_plane(f).unwrap().normal;
            assert!(n0.cross(&n1).norm() < 1e-9 && n0.dot(&n1) < 0.0);
        }
    }

    #[test]
    fn screw_examples() {
        let o = Point3::origin();
        let quarter = RigidMotion::rotation_about_line(&o, &Vec3::z(), FRAC_PI_2).unwrap();
        match quarter.screw(1e-9) {
            Screw::Rotation {
                axis_dir,
                angle,
                pitch,
                axis_point,
            } => {
                assert!((axis_dir.z - 1.0).abs() < 1e-12);
                assert!((angle - FRAC_PI_2).abs() < 1e-12);
                assert!(pitch.abs() < 1e-12);
                assert!(axis_point.coords.norm() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let lifted = RigidMotion::translation(Vec3::new(0.0, 0.0, 0.3)).compose(&quarter);
        match lifted.screw(1e-9) {
            Screw::Rotation { pitch, .. } => assert!((pitch - 0.3).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        let shift = RigidMotion::translation(Vec3::new(1.0, 2.0, 3.0));
        assert_eq!(shift.screw(1e-9), Screw::Translation(Vec3::new(1.0, 2.0, 3.0)));
    }

    #[test]
    fn screw_half_turn_round_trip() {
        let m = RigidMotion::rotation_about_line(&Point3::new(0.5, -1.0, 2.0), &Vec3::new(0.0, 1.0, 1.0), PI)
            .unwrap();
        let m = RigidMotion::translation(Vec3::new(0.0, 0.2, 0.2)).compose(&m);
        let back = m.screw(1e-9).to_motion();
        let p = Point3::new(0.1, 0.2, 0.3);
        assert!(close(&back.apply(&p), &m.apply(&p), 1e-9));
    }

    #[test]
    fn fit_recovers_motion() {
        let t = Tetrahedron::reference(0, 1.0);
        let m = RigidMotion::rotation_about_line(&Point3::new(1.0, 0.0, 0.0), &Vec3::new(1.0, 2.0, 3.0), 2.0)
            .unwrap();
        let u = t.transformed(&m);
        let fitted = RigidMotion::fit(&t.vertices, &u.vertices).unwrap();
        assert!((fitted.rotation.matrix() - m.rotation.matrix()).norm() < 1e-12);
        assert!((fitted.translation - m.translation).norm() < 1e-12);
    }
}
