//! Edge rings, the icosahedral vertex aggregate and their gap-closing twists.

use std::f64::consts::PI;

use nalgebra::Rotation3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{direction, Plane, Point3, RigidMotion, Tetrahedron, Vec3};
use crate::golden;
use crate::helix::Chirality;
use crate::polytope;

/// Relative tolerance used when validating regularity of stored tetrahedra.
pub const REGULARITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AggregateKind {
    EdgeRing,
    Icosahedral,
    BcHelix,
    ModifiedBcHelix,
}

impl AggregateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            AggregateKind::EdgeRing => "edge_ring",
            AggregateKind::Icosahedral => "icosahedral",
            AggregateKind::BcHelix => "bc_helix",
            AggregateKind::ModifiedBcHelix => "modified_bc_helix",
        }
    }

    pub fn is_helix(&self) -> bool {
        matches!(self, AggregateKind::BcHelix | AggregateKind::ModifiedBcHelix)
    }
}

/// Handedness of a twist about each tetrahedron's outward axis.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistSense {
    #[default]
    RightHanded,
    LeftHanded,
}

impl TwistSense {
    pub fn sign(&self) -> f64 {
        match self {
            TwistSense::RightHanded => 1.0,
            TwistSense::LeftHanded => -1.0,
        }
    }
}

/// Options for the twist operations.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TwistOptions {
    pub sense: TwistSense,
    /// Replaces α_n / α₂₀. Exploratory only: other angles do not close the gaps.
    pub angle_override: Option<f64>,
}

/// Construction parameters echoed into serialized aggregates and reports.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub underlying: Option<Chirality>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation_sense: Option<Chirality>,
    #[serde(default)]
    pub twisted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist_sense: Option<TwistSense>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle_override: Option<f64>,
}

/// An ordered collection of regular tetrahedra with a common edge length.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub kind: AggregateKind,
    pub edge_length: f64,
    pub parameters: Parameters,
    pub tetrahedra: Vec<Tetrahedron>,
}

impl Aggregate {
    /// Builds and validates an aggregate.
    pub fn new(
        kind: AggregateKind,
        edge_length: f64,
        parameters: Parameters,
        tetrahedra: Vec<Tetrahedron>,
    ) -> Result<Self> {
        let agg = Self {
            kind,
            edge_length,
            parameters,
            tetrahedra,
        };
        agg.validate()?;
        Ok(agg)
    }

    /// Ids contiguous from zero, every tetrahedron regular and positively
    /// oriented with the common edge length.
    pub fn validate(&self) -> Result<()> {
        if !(self.edge_length > 0.0 && self.edge_length.is_finite()) {
            return Err(Error::domain(format!(
                "edge length must be positive, got {}",
                self.edge_length
            )));
        }
        for (i, t) in self.tetrahedra.iter().enumerate() {
            if t.id != i {
                return Err(Error::Invariant(format!(
                    "tetrahedron ids must be contiguous from 0; position {i} holds id {}",
                    t.id
                )));
            }
            if (t.edge_length - self.edge_length).abs() > REGULARITY_TOL * self.edge_length {
                return Err(Error::Invariant(format!(
                    "tetrahedron {i} has edge length {} instead of {}",
                    t.edge_length, self.edge_length
                )));
            }
            Tetrahedron::new(t.id, t.vertices, self.edge_length, REGULARITY_TOL)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.tetrahedra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tetrahedra.is_empty()
    }

    /// Largest pairwise intersection volume between distinct tetrahedra.
    pub fn max_overlap_volume(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.tetrahedra.iter().enumerate() {
            for b in &self.tetrahedra[i + 1..] {
                worst = worst.max(polytope::intersection_volume(a, b));
            }
        }
        worst
    }

    /// Largest edge-length deviation over all tetrahedra.
    pub fn regularity_residual(&self) -> f64 {
        self.tetrahedra
            .iter()
            .map(Tetrahedron::regularity_residual)
            .fold(0.0, f64::max)
    }

    pub fn transformed(&self, m: &RigidMotion) -> Self {
        Self {
            tetrahedra: self.tetrahedra.iter().map(|t| t.transformed(m)).collect(),
            ..self.clone()
        }
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, factor: f64) -> Self {
        let a = self.edge_length * factor;
        Self {
            edge_length: a,
            tetrahedra: self
                .tetrahedra
                .iter()
                .map(|t| Tetrahedron {
                    id: t.id,
                    vertices: t.vertices.map(|p| p * factor),
                    edge_length: a,
                })
                .collect(),
            ..self.clone()
        }
    }

    /// Reflection through the plane through the origin with normal `normal`.
    /// Labels 1 and 2 of every tetrahedron are swapped to restore positive
    /// orientation; recorded handedness parameters are flipped.
    pub fn mirrored(&self, normal: &Vec3) -> Result<Self> {
        let plane = Plane::new(direction(*normal)?, &Point3::origin());
        let mut parameters = self.parameters.clone();
        parameters.underlying = parameters.underlying.map(Chirality::flipped);
        parameters.rotation_sense = parameters.rotation_sense.map(Chirality::flipped);
        parameters.twist_sense = parameters.twist_sense.map(|s| match s {
            TwistSense::RightHanded => TwistSense::LeftHanded,
            TwistSense::LeftHanded => TwistSense::RightHanded,
        });
        Ok(Self {
            parameters,
            tetrahedra: self
                .tetrahedra
                .iter()
                .map(|t| {
                    let mut vertices = t.vertices.map(|p| plane.reflect(&p));
                    vertices.swap(1, 2);
                    Tetrahedron {
                        vertices,
                        ..t.clone()
                    }
                })
                .collect(),
            ..self.clone()
        })
    }

    /// Pairs `(i, j)`, `i < j`, whose shared faces the construction is meant
    /// to bring into contact.
    pub fn expected_adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.tetrahedra.len();
        let mut pairs: Vec<(usize, usize)> = match self.kind {
            AggregateKind::EdgeRing => (0..n)
                .map(|k| {
                    let l = (k + 1) % n;
                    (k.min(l), k.max(l))
                })
                .collect(),
            AggregateKind::Icosahedral => icosahedron_face_adjacency(),
            AggregateKind::BcHelix | AggregateKind::ModifiedBcHelix => {
                (1..n).map(|k| (k - 1, k)).collect()
            }
        };
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}

fn check_edge_length(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("edge length must be positive, got {a}")))
    }
}

fn ring_frame(k: usize, n: u32) -> (Vec3, Vec3) {
    let az = 2.0 * PI * k as f64 / n as f64;
    let radial = Vec3::new(az.cos(), az.sin(), 0.0);
    let tangential = Vec3::new(-az.sin(), az.cos(), 0.0);
    (radial, tangential)
}

/// `n` tetrahedra sharing the central edge on the z-axis, centers at azimuths
/// 2πk/n, each mirror-symmetric about its own azimuthal half-plane.
pub fn build_edge_ring(n: u32, a: f64) -> Result<Aggregate> {
    golden::alpha_edge_ring(n)?;
    check_edge_length(a)?;
    let top = Point3::new(0.0, 0.0, a / 2.0);
    let bottom = Point3::new(0.0, 0.0, -a / 2.0);
    let tetrahedra = (0..n as usize)
        .map(|k| {
            let (radial, tangential) = ring_frame(k, n);
            let mid = Point3::from(radial * (a / 2f64.sqrt()));
            Tetrahedron {
                id: k,
                vertices: [top, bottom, mid + tangential * (a / 2.0), mid - tangential * (a / 2.0)],
                edge_length: a,
            }
        })
        .collect();
    Aggregate::new(
        AggregateKind::EdgeRing,
        a,
        Parameters {
            n: Some(n),
            ..Parameters::default()
        },
        tetrahedra,
    )
}

/// Rotates every tetrahedron of an untwisted edge ring by α_n about the line
/// joining the central-edge midpoint to its peripheral-edge midpoint.
pub fn twist_edge_ring(agg: &Aggregate) -> Result<Aggregate> {
    twist_edge_ring_with(agg, TwistOptions::default())
}

pub fn twist_edge_ring_with(agg: &Aggregate, opts: TwistOptions) -> Result<Aggregate> {
    if agg.kind != AggregateKind::EdgeRing {
        return Err(Error::domain(format!(
            "edge-ring twist applied to a {} aggregate",
            agg.kind.as_str()
        )));
    }
    if agg.parameters.twisted {
        return Err(Error::State("edge ring is already twisted".into()));
    }
    let n = agg
        .parameters
        .n
        .ok_or_else(|| Error::domain("edge ring without ring size"))?;
    let angle = match opts.angle_override {
        Some(angle) => angle,
        None => golden::alpha_edge_ring(n)?.radians,
    } * opts.sense.sign();
    let center = Point3::origin();
    let tetrahedra = agg
        .tetrahedra
        .iter()
        .map(|t| {
            let axis = Point3::from((t.vertices[2].coords + t.vertices[3].coords) / 2.0) - center;
            let m = RigidMotion::rotation_about_line(&center, &axis, angle)?;
            Ok(t.transformed(&m))
        })
        .collect::<Result<Vec<_>>>()?;
    Aggregate::new(
        agg.kind,
        agg.edge_length,
        Parameters {
            twisted: true,
            twist_sense: Some(opts.sense),
            angle_override: opts.angle_override,
            ..agg.parameters.clone()
        },
        tetrahedra,
    )
}

/// Vertices `(0, ±1, ±φ)` and cyclic permutations; edge length 2.
pub fn icosahedron_vertices() -> [Vec3; 12] {
    let p = golden::phi();
    let mut out = [Vec3::zeros(); 12];
    let mut i = 0;
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            out[i] = Vec3::new(0.0, s1, s2 * p);
            out[i + 1] = Vec3::new(s1, s2 * p, 0.0);
            out[i + 2] = Vec3::new(s2 * p, 0.0, s1);
            i += 3;
        }
    }
    out
}

/// The 20 faces as vertex-index triples, counterclockwise seen from outside.
pub fn icosahedron_faces() -> Vec<[usize; 3]> {
    let v = icosahedron_vertices();
    let is_edge = |i: usize, j: usize| ((v[i] - v[j]).norm() - 2.0).abs() < 1e-9;
    let mut faces = Vec::with_capacity(20);
    for i in 0..12 {
        for j in i + 1..12 {
            for k in j + 1..12 {
                if is_edge(i, j) && is_edge(j, k) && is_edge(i, k) {
                    let outward = (v[j] - v[i]).cross(&(v[k] - v[i])).dot(&(v[i] + v[j] + v[k]));
                    faces.push(if outward > 0.0 { [i, j, k] } else { [i, k, j] });
                }
            }
        }
    }
    faces
}

/// Face pairs of the icosahedron sharing an edge (30 pairs).
pub fn icosahedron_face_adjacency() -> Vec<(usize, usize)> {
    let faces = icosahedron_faces();
    let mut pairs = Vec::with_capacity(30);
    for (i, f) in faces.iter().enumerate() {
        for (j, g) in faces.iter().enumerate().skip(i + 1) {
            if f.iter().filter(|x| g.contains(x)).count() == 2 {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// The 60 proper rotations of the reference icosahedron.
pub fn icosahedral_rotations() -> Vec<Rotation3<f64>> {
    let v = icosahedron_vertices();
    let faces = icosahedron_faces();
    let f0 = faces[0];
    let five = Rotation3::from_axis_angle(&direction(v[0]).expect("nonzero"), 2.0 * PI / 5.0);
    let three = Rotation3::from_axis_angle(
        &direction(v[f0[0]] + v[f0[1]] + v[f0[2]]).expect("nonzero"),
        2.0 * PI / 3.0,
    );
    let mut group = vec![Rotation3::identity()];
    let mut frontier = group.clone();
    while let Some(r) = frontier.pop() {
        for g in [five, three] {
            let candidate = g * r;
            if !group.iter().any(|h| (h.matrix() - candidate.matrix()).norm() < 1e-9) {
                group.push(candidate);
                frontier.push(candidate);
            }
        }
    }
    group
}

/// Twenty tetrahedra sharing the central vertex at the origin (label 0), one
/// per icosahedron face. Each exterior face (face 0) is perpendicular to its
/// face-center direction and rotationally aligned with the icosahedral face.
pub fn build_icosahedral(a: f64) -> Result<Aggregate> {
    check_edge_length(a)?;
    let v = icosahedron_vertices();
    let height = a * (2.0f64 / 3.0).sqrt();
    let circumradius = a / 3f64.sqrt();
    let tetrahedra = icosahedron_faces()
        .iter()
        .enumerate()
        .map(|(id, face)| {
            let c = (v[face[0]] + v[face[1]] + v[face[2]]).normalize();
            let exterior = face.map(|i| {
                let radial = (v[i] - c * v[i].dot(&c)).normalize();
                Point3::from(c * height + radial * circumradius)
            });
            Tetrahedron {
                id,
                vertices: [Point3::origin(), exterior[0], exterior[1], exterior[2]],
                edge_length: a,
            }
        })
        .collect();
    Aggregate::new(
        AggregateKind::Icosahedral,
        a,
        Parameters::default(),
        tetrahedra,
    )
}

/// Rotates every tetrahedron by α₂₀ about the axis from the central vertex
/// through the center of its exterior face.
pub fn twist_icosahedral(agg: &Aggregate) -> Result<Aggregate> {
    twist_icosahedral_with(agg, TwistOptions::default())
}

pub fn twist_icosahedral_with(agg: &Aggregate, opts: TwistOptions) -> Result<Aggregate> {
    if agg.kind != AggregateKind::Icosahedral {
        return Err(Error::domain(format!(
            "icosahedral twist applied to a {} aggregate",
            agg.kind.as_str()
        )));
    }
    if agg.parameters.twisted {
        return Err(Error::State("icosahedral aggregate is already twisted".into()));
    }
    let angle = opts
        .angle_override
        .unwrap_or(golden::alpha_icosahedral().radians)
        * opts.sense.sign();
    let tetrahedra = agg
        .tetrahedra
        .iter()
        .map(|t| {
            let apex = t.vertices[0];
            let axis = t.face_centroid(0) - apex;
            let m = RigidMotion::rotation_about_line(&apex, &axis, angle)?;
            Ok(t.transformed(&m))
        })
        .collect::<Result<Vec<_>>>()?;
    Aggregate::new(
        agg.kind,
        agg.edge_length,
        Parameters {
            twisted: true,
            twist_sense: Some(opts.sense),
            angle_override: opts.angle_override,
            ..agg.parameters.clone()
        },
        tetrahedra,
    )
}
