//! Browser bindings for the demo page in `www/`.
//!
//! Each export returns a JSON object holding an `svg` string plus the numbers
//! shown beside it. The logic lives in plain functions so it can be tested
//! natively; the `#[wasm_bindgen]` wrappers only convert errors.

use serde_json::json;
use wasm_bindgen::prelude::*;

use tetragold::aggregate::{build_edge_ring, twist_edge_ring_with, TwistOptions};
use tetragold::analysis::{find_face_junctions, plane_classes, shifted_junction, standard_junctions, JunctionKind};
use tetragold::geom::Vec3;
use tetragold::helix::{build_modified_helix, detect_period, helix_axis, projected_symmetry_order, Chirality, HelixSpec};
use tetragold::{golden, io, ToleranceConfig};

/// An `n`-ring twisted by `fraction` of its gap-closing angle, seen along the
/// central edge.
pub fn ring_twist(n: u32, fraction: f64) -> Result<String, String> {
    let tol = ToleranceConfig::default();
    let alpha = golden::alpha_edge_ring(n).map_err(|e| e.to_string())?.radians;
    let opts = TwistOptions {
        angle_override: Some(fraction * alpha),
        ..Default::default()
    };
    let ring = build_edge_ring(n, 1.0).and_then(|r| twist_edge_ring_with(&r, opts)).map_err(|e| e.to_string())?;
    let svg = io::aggregate_projection_svg(&ring, &Vec3::z()).map_err(|e| e.to_string())?;
    Ok(json!({
        "svg": svg,
        "twist_degrees": (fraction * alpha).to_degrees(),
        "closing_degrees": alpha.to_degrees(),
        "junctions": find_face_junctions(&ring, &tol).len(),
        "plane_classes": plane_classes(&ring, &tol).count,
    })
    .to_string())
}

/// A helix of `count` tetrahedra whose β step is replaced by
/// `rotation_degrees`, seen along its screw axis.
pub fn helix_rotation(count: usize, rotation_degrees: f64, like: bool) -> Result<String, String> {
    let tol = ToleranceConfig::default();
    let sense = if like { Chirality::Right } else { Chirality::Left };
    let spec = HelixSpec {
        angle_override: Some(rotation_degrees.to_radians()),
        ..HelixSpec::modified(count, Chirality::Right, sense, 1.0)
    };
    let agg = build_modified_helix(&spec).map_err(|e| e.to_string())?;
    // Off-β angles may not share a single screw axis; fall back to z.
    let axis = helix_axis(&agg, &tol).ok();
    let view = axis.map_or(Vec3::z(), |a| a.direction);
    let period = if count > 10 { detect_period(&agg, 10, &tol).ok().flatten() } else { None };
    let svg = io::aggregate_projection_svg(&agg, &view).map_err(|e| e.to_string())?;
    Ok(json!({
        "svg": svg,
        "beta_degrees": golden::beta().degrees(),
        "period": period,
        "symmetry_order": axis.and_then(|_| projected_symmetry_order(&agg, &tol).ok()),
        "plane_classes": plane_classes(&agg, &tol).count,
    })
    .to_string())
}

/// The helix face junction with its upper face slid `steps`·δ along the
/// reference axis. `match` names the junction kind reproduced, if any.
pub fn junction_shift(steps: f64) -> Result<String, String> {
    let tol = ToleranceConfig::default();
    let js = standard_junctions(1.0, &tol).map_err(|e| e.to_string())?;
    let helix = js
        .iter()
        .find(|(k, _)| *k == JunctionKind::Helix)
        .map(|(_, j)| j)
        .ok_or("helix junction missing")?;
    let j = shifted_junction(helix, steps);
    let matched = JunctionKind::ALL
        .iter()
        .find(|k| (k.expected_offset() - j.signed_offset_in_delta).abs() < 1e-3)
        .map(|k| k.as_str());
    Ok(json!({
        "svg": io::junction_svg(&j),
        "angle_min_degrees": j.angle_min.to_degrees(),
        "offset_in_delta": j.offset_in_delta,
        "signed_offset_in_delta": j.signed_offset_in_delta,
        "overlap_area": j.overlap_area,
        "match": matched,
    })
    .to_string())
}

#[wasm_bindgen(js_name = ringTwist)]
pub fn ring_twist_js(n: u32, fraction: f64) -> Result<String, JsValue> {
    ring_twist(n, fraction).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = helixRotation)]
pub fn helix_rotation_js(count: usize, rotation_degrees: f64, like: bool) -> Result<String, JsValue> {
    helix_rotation(count, rotation_degrees, like).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = junctionShift)]
pub fn junction_shift_js(steps: f64) -> Result<String, JsValue> {
    junction_shift(steps).map_err(|e| JsValue::from_str(&e))
}
