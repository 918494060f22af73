//! Boerdijk–Coxeter helices, canonical and β-rotated.
//!
//! Each new tetrahedron is the mirror image of the previous one across its
//! exit face. The exit face is the one opposite the oldest vertex, which
//! reproduces the standard tetrahelix; the handedness of the centroid helix
//! follows from the orientation of the initial age ordering. In the modified
//! helix the appended tetrahedron is then turned by β about the exit face's
//! normal through its own centroid.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::aggregate::{Aggregate, AggregateKind, Parameters};
use crate::error::{Error, Result};
use crate::geom::{matches_as_sets, Point3, RigidMotion, Screw, Tetrahedron, ToleranceConfig, Vec3};
use crate::golden;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chirality {
    Right,
    Left,
}

impl Chirality {
    pub fn flipped(self) -> Self {
        match self {
            Chirality::Right => Chirality::Left,
            Chirality::Left => Chirality::Right,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Chirality::Right => 1.0,
            Chirality::Left => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixSpec {
    pub count: usize,
    /// Handedness of the centroid helix.
    pub underlying: Chirality,
    /// Sense of the β turn about the outward normal of the exit face.
    pub rotation_sense: Chirality,
    pub edge_length: f64,
    pub modified: bool,
    /// Replaces β in the modified construction. Exploratory only.
    pub angle_override: Option<f64>,
}

impl HelixSpec {
    pub fn canonical(count: usize, underlying: Chirality, edge_length: f64) -> Self {
        Self {
            count,
            underlying,
            rotation_sense: underlying,
            edge_length,
            modified: false,
            angle_override: None,
        }
    }

    pub fn modified(
        count: usize,
        underlying: Chirality,
        rotation_sense: Chirality,
        edge_length: f64,
    ) -> Self {
        Self {
            count,
            underlying,
            rotation_sense,
            edge_length,
            modified: true,
            angle_override: None,
        }
    }

    /// Like chiralities: the 5-BC helix.
    pub fn five_bc(count: usize, edge_length: f64) -> Self {
        Self::modified(count, Chirality::Right, Chirality::Right, edge_length)
    }

    /// Unlike chiralities: the 3-BC helix.
    pub fn three_bc(count: usize, edge_length: f64) -> Self {
        Self::modified(count, Chirality::Right, Chirality::Left, edge_length)
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::domain("helix needs at least one tetrahedron"));
        }
        if !(self.edge_length > 0.0 && self.edge_length.is_finite()) {
            return Err(Error::domain(format!(
                "edge length must be positive, got {}",
                self.edge_length
            )));
        }
        Ok(())
    }
}

/// Label permutation between age order and stored labels. The right-handed
/// chain uses the reference labels as its age order; the left-handed chain
/// swaps two of them, which mirrors the helix.
fn label_order(c: Chirality) -> [usize; 4] {
    match c {
        Chirality::Right => [0, 1, 2, 3],
        Chirality::Left => [0, 2, 1, 3],
    }
}

fn build(spec: &HelixSpec) -> Result<Aggregate> {
    spec.validate()?;
    let a = spec.edge_length;
    let order = label_order(spec.underlying);
    let reference = Tetrahedron::reference(0, a);
    // Oldest first.
    let mut aged: [Point3; 4] = order.map(|l| reference.vertices[l]);
    let mut tetrahedra = Vec::with_capacity(spec.count);
    let store = |id: usize, aged: &[Point3; 4]| {
        let mut vertices = [Point3::origin(); 4];
        for (age, &label) in order.iter().enumerate() {
            vertices[label] = aged[age];
        }
        Tetrahedron {
            id,
            vertices,
            edge_length: a,
        }
    };
    tetrahedra.push(store(0, &aged));
    let turn = spec.angle_override.unwrap_or(golden::beta().radians) * spec.rotation_sense.sign();
    for id in 1..spec.count {
        let current = tetrahedra.last().expect("non-empty");
        // Exit face: opposite the oldest vertex.
        let exit = order[0];
        let appended = current.append_mirror(exit, id)?;
        let apex = appended.vertices[exit];
        let mut next = [aged[1], aged[2], aged[3], apex];
        if spec.modified {
            let normal = current.face_plane(exit)?.normal;
            let centroid = Point3::from(next.iter().fold(Vec3::zeros(), |s, p| s + p.coords) / 4.0);
            let m = RigidMotion::rotation_about_line(&centroid, &normal, turn)?;
            next = next.map(|p| m.apply(&p));
        }
        aged = next;
        tetrahedra.push(store(id, &aged));
    }
    let kind = if spec.modified {
        AggregateKind::ModifiedBcHelix
    } else {
        AggregateKind::BcHelix
    };
    Aggregate::new(
        kind,
        a,
        Parameters {
            count: Some(spec.count),
            underlying: Some(spec.underlying),
            rotation_sense: spec.modified.then_some(spec.rotation_sense),
            angle_override: spec.angle_override,
            ..Parameters::default()
        },
        tetrahedra,
    )
}

/// Canonical tetrahelix of `spec.count` face-sharing tetrahedra.
pub fn build_bc_helix(spec: &HelixSpec) -> Result<Aggregate> {
    if spec.modified {
        return Err(Error::domain("build_bc_helix called with a modified spec"));
    }
    build(spec)
}

/// Tetrahelix in which every appended tetrahedron is turned by β about the
/// normal of the face it was appended to.
pub fn build_modified_helix(spec: &HelixSpec) -> Result<Aggregate> {
    if !spec.modified {
        return Err(Error::domain("build_modified_helix called with a canonical spec"));
    }
    build(spec)
}

pub fn build_helix(spec: &HelixSpec) -> Result<Aggregate> {
    build(spec)
}

fn require_helix(agg: &Aggregate) -> Result<()> {
    if agg.kind.is_helix() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{} aggregate is not a helix",
            agg.kind.as_str()
        )))
    }
}

/// Smallest `m ≤ max_m` such that every `T_{k+m}` is `T_k` shifted by one
/// common vector (vertex sets, labels ignored).
pub fn detect_period(agg: &Aggregate, max_m: usize, tol: &ToleranceConfig) -> Result<Option<usize>> {
    require_helix(agg)?;
    if agg.len() <= max_m {
        return Err(Error::domain(format!(
            "period search up to {max_m} needs more than {max_m} tetrahedra, got {}",
            agg.len()
        )));
    }
    let eps = tol.point_abs(agg.edge_length);
    let t = &agg.tetrahedra;
    for m in 1..=max_m {
        let shift = t[m].centroid() - t[0].centroid();
        let periodic = (0..t.len() - m).all(|k| {
            let moved = t[k].vertices.map(|p| p + shift);
            matches_as_sets(&moved, &t[k + m].vertices, eps)
        });
        if periodic {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Motion carrying `T_k` onto `T_{k+1}` label by label.
pub fn consecutive_motions(agg: &Aggregate) -> Result<Vec<RigidMotion>> {
    agg.tetrahedra
        .windows(2)
        .map(|w| RigidMotion::fit(&w[0].vertices, &w[1].vertices))
        .collect()
}

/// Common screw axis of the consecutive motions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HelixAxis {
    pub point: Point3,
    pub direction: Vec3,
    pub step_angle: f64,
    pub step_pitch: f64,
}

pub fn helix_axis(agg: &Aggregate, tol: &ToleranceConfig) -> Result<HelixAxis> {
    require_helix(agg)?;
    let motions = consecutive_motions(agg)?;
    let eps = tol.point_abs(agg.edge_length);
    let mut axis: Option<HelixAxis> = None;
    for m in motions {
        let Screw::Rotation {
            axis_point,
            axis_dir,
            angle,
            pitch,
        } = m.screw(tol.angle_tol)
        else {
            return Err(Error::Structure("consecutive motion is a pure translation".into()));
        };
        match &axis {
            None => {
                axis = Some(HelixAxis {
                    point: axis_point,
                    direction: axis_dir.into_inner(),
                    step_angle: angle,
                    step_pitch: pitch,
                })
            }
            Some(first) => {
                let off = axis_point - first.point;
                let off_perp = off - first.direction * off.dot(&first.direction);
                if first.direction.cross(&axis_dir).norm() > tol.parallel_tol
                    || first.direction.dot(&axis_dir) < 0.0
                    || off_perp.norm() > eps
                    || (angle - first.step_angle).abs() > tol.angle_tol
                {
                    return Err(Error::Structure(
                        "consecutive motions do not share a screw axis".into(),
                    ));
                }
            }
        }
    }
    axis.ok_or_else(|| Error::Structure("helix needs at least two tetrahedra".into()))
}

/// Largest order tested by [`projected_symmetry_order`].
pub const MAX_SYMMETRY_ORDER: usize = 24;

/// Order of the rotational symmetry of all vertices projected along the
/// common screw axis (coincident projections merged).
pub fn projected_symmetry_order(agg: &Aggregate, tol: &ToleranceConfig) -> Result<usize> {
    let axis = helix_axis(agg, tol)?;
    let eps = tol.point_abs(agg.edge_length);
    let e1 = axis.direction.cross(&Vec3::x()).try_normalize(1e-6).unwrap_or_else(|| {
        axis.direction.cross(&Vec3::y()).normalize()
    });
    let e2 = axis.direction.cross(&e1);
    let mut points: Vec<[f64; 2]> = Vec::new();
    for p in agg.tetrahedra.iter().flat_map(|t| t.vertices.iter()) {
        let d = p - axis.point;
        let q = [d.dot(&e1), d.dot(&e2)];
        if !points.iter().any(|r| (r[0] - q[0]).hypot(r[1] - q[1]) < eps) {
            points.push(q);
        }
    }
    let invariant = |s: usize| {
        let (sin, cos) = (2.0 * PI / s as f64).sin_cos();
        points.iter().all(|p| {
            let r = [cos * p[0] - sin * p[1], sin * p[0] + cos * p[1]];
            points.iter().any(|q| (r[0] - q[0]).hypot(r[1] - q[1]) < eps)
        })
    };
    Ok((1..=MAX_SYMMETRY_ORDER).rev().find(|&s| invariant(s)).unwrap_or(1))
}

/// Smallest helix length from which the plane-class count stays constant up
/// to `max_count`, together with that count.
pub fn plane_class_saturation(
    spec: &HelixSpec,
    max_count: usize,
    tol: &ToleranceConfig,
) -> Result<(usize, usize)> {
    let counts = (1..=max_count)
        .map(|n| {
            let agg = build_helix(&HelixSpec { count: n, ..*spec })?;
            Ok(crate::analysis::plane_classes(&agg, tol).count)
        })
        .collect::<Result<Vec<_>>>()?;
    let last = *counts.last().ok_or_else(|| Error::domain("max_count must be positive"))?;
    let start = counts.iter().rposition(|&c| c != last).map_or(0, |i| i + 1);
    Ok((start + 1, last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::plane_classes;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn canonical_helix_step() {
        for c in [Chirality::Right, Chirality::Left] {
            let agg = build_bc_helix(&HelixSpec::canonical(12, c, 1.0)).unwrap();
            let axis = helix_axis(&agg, &tol()).unwrap();
            assert!((axis.step_angle - (-2.0f64 / 3.0).acos()).abs() < 1e-9);
            // Right-handed centroid helix: positive pitch about the rotation axis.
            assert_eq!(axis.step_pitch > 0.0, c == Chirality::Right);
            assert!((axis.step_pitch.abs() - 1.0 / 10f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn canonical_centroids_on_cylinder() {
        let agg = build_bc_helix(&HelixSpec::canonical(20, Chirality::Right, 1.0)).unwrap();
        let axis = helix_axis(&agg, &tol()).unwrap();
        let radii: Vec<f64> = agg
            .tetrahedra
            .iter()
            .map(|t| {
                let d = t.centroid() - axis.point;
                (d - axis.direction * d.dot(&axis.direction)).norm()
            })
            .collect();
        for r in &radii {
            assert!((r - radii[0]).abs() < 1e-9);
        }
    }

    #[test]
    fn modified_helix_periods() {
        let five = build_modified_helix(&HelixSpec::five_bc(12, 1.0)).unwrap();
        let three = build_modified_helix(&HelixSpec::three_bc(12, 1.0)).unwrap();
        assert_eq!(detect_period(&five, 10, &tol()).unwrap(), Some(5));
        assert_eq!(detect_period(&three, 10, &tol()).unwrap(), Some(3));
        let left_like = build_modified_helix(&HelixSpec::modified(12, Chirality::Left, Chirality::Left, 1.0)).unwrap();
        assert_eq!(detect_period(&left_like, 10, &tol()).unwrap(), Some(5));
        let canonical = build_bc_helix(&HelixSpec::canonical(30, Chirality::Right, 1.0)).unwrap();
        assert_eq!(detect_period(&canonical, 20, &tol()).unwrap(), None);
    }

    #[test]
    fn period_needs_enough_tetrahedra() {
        let agg = build_modified_helix(&HelixSpec::five_bc(5, 1.0)).unwrap();
        assert!(matches!(detect_period(&agg, 10, &tol()), Err(Error::Domain(_))));
        let ring = crate::aggregate::build_edge_ring(5, 1.0).unwrap();
        assert!(detect_period(&ring, 2, &tol()).is_err());
    }

    #[test]
    fn symmetry_orders() {
        let five = build_modified_helix(&HelixSpec::five_bc(11, 1.0)).unwrap();
        let three = build_modified_helix(&HelixSpec::three_bc(7, 1.0)).unwrap();
        let canonical = build_bc_helix(&HelixSpec::canonical(30, Chirality::Right, 1.0)).unwrap();
        assert_eq!(projected_symmetry_order(&five, &tol()).unwrap(), 5);
        assert_eq!(projected_symmetry_order(&three, &tol()).unwrap(), 3);
        assert_eq!(projected_symmetry_order(&canonical, &tol()).unwrap(), 1);
    }

    #[test]
    fn plane_class_counts() {
        for n in [1, 2, 5, 10, 30] {
            let agg = build_bc_helix(&HelixSpec::canonical(n, Chirality::Right, 1.0)).unwrap();
            assert_eq!(plane_classes(&agg, &tol()).count, 3 * n + 1);
        }
        let (n0, count) = plane_class_saturation(&HelixSpec::five_bc(1, 1.0), 30, &tol()).unwrap();
        assert_eq!(count, 10);
        assert!(n0 <= 7);
        let (n0, count) = plane_class_saturation(&HelixSpec::three_bc(1, 1.0), 30, &tol()).unwrap();
        assert_eq!(count, 9);
        assert!(n0 <= 7);
    }

    #[test]
    fn spec_mismatch_and_bad_input() {
        assert!(build_bc_helix(&HelixSpec::five_bc(3, 1.0)).is_err());
        assert!(build_modified_helix(&HelixSpec::canonical(3, Chirality::Left, 1.0)).is_err());
        assert!(build_helix(&HelixSpec::five_bc(0, 1.0)).is_err());
        assert!(build_helix(&HelixSpec::five_bc(3, -1.0)).is_err());
        let single = build_helix(&HelixSpec::five_bc(1, 1.0)).unwrap();
        assert!(matches!(helix_axis(&single, &tol()), Err(Error::Structure(_))));
    }

    #[test]
    fn period_translation_is_axial() {
        for spec in [HelixSpec::five_bc(16, 1.0), HelixSpec::three_bc(16, 1.0)] {
            let agg = build_helix(&spec).unwrap();
            let m = detect_period(&agg, 10, &tol()).unwrap().unwrap();
            let axis = helix_axis(&agg, &tol()).unwrap();
            let shift = agg.tetrahedra[m].centroid() - agg.tetrahedra[0].centroid();
            assert!(shift.normalize().cross(&axis.direction).norm() < 1e-9);
        }
    }

    #[test]
    fn rotated_helix_overlap_is_second_neighbour_only() {
        // Independent halfspace-intersection value for T_k ∩ T_{k+2}, a = 1.
        const SECOND_NEIGHBOUR: f64 = 2.094_453_259_978e-6;
        for spec in [HelixSpec::five_bc(8, 1.0), HelixSpec::three_bc(8, 1.0)] {
            let agg = build_helix(&spec).unwrap();
            let t = &agg.tetrahedra;
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    let v = crate::polytope::intersection_volume(&t[i], &t[j]);
                    if j == i + 2 {
                        assert!((v - SECOND_NEIGHBOUR).abs() < 1e-15, "{i} {j} {v}");
                    } else {
                        assert!(v < 1e-12, "{i} {j} {v}");
                    }
                }
            }
        }
        let canonical = build_bc_helix(&HelixSpec::canonical(8, Chirality::Right, 1.0)).unwrap();
        assert!(canonical.max_overlap_volume() < 1e-12);
    }
}
