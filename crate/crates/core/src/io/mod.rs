//! File formats: aggregate JSON, Wavefront OBJ and SVG projections.

pub mod json;
pub mod obj;
pub mod svg;

pub use json::{aggregate_from_json, aggregate_to_json, format_g17};
pub use obj::{aggregate_to_obj, parse_obj, ObjMesh};
pub use svg::{aggregate_projection_svg, junction_svg};
