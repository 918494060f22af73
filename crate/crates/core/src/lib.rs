//! Aggregates of regular tetrahedra and the golden-ratio twists that close
//! their gaps.
//!
//! The crate builds edge rings, the 20-tetrahedron icosahedral aggregate and
//! Boerdijk–Coxeter helices (canonical and β-rotated), then measures them:
//! plane classes, face junctions and their signatures, helix periods and
//! projected symmetry orders.

pub mod aggregate;
pub mod analysis;
pub mod error;
pub mod geom;
pub mod golden;
pub mod helix;
pub mod io;
pub mod polytope;
pub mod report;
pub mod verify;

pub use aggregate::{Aggregate, AggregateKind, Parameters, TwistOptions, TwistSense};
pub use error::{Error, Result};
pub use geom::{FaceRef, Plane, RigidMotion, Screw, Tetrahedron, ToleranceConfig};
pub use helix::{Chirality, HelixSpec};
