//! Aggregate JSON with 17 significant digits per number.
//!
//! The writer is hand-rolled so the byte layout is fixed: two-space indent,
//! object keys in sorted order, one vertex per line.

use serde::Deserialize;
use serde_json::Value;

use crate::aggregate::{Aggregate, AggregateKind, Parameters, REGULARITY_TOL};
use crate::error::{Error, Result};
use crate::geom::{Point3, Tetrahedron};

/// `printf("%.17g")`: shortest of fixed and exponent notation with trailing
/// zeros removed. Round-trips every finite double exactly.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        trim_fraction(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn write_number(out: &mut String, n: &serde_json::Number) {
    match (n.as_i64(), n.as_u64(), n.as_f64()) {
        (Some(i), _, _) => out.push_str(&i.to_string()),
        (_, Some(u), _) => out.push_str(&u.to_string()),
        (_, _, Some(f)) => out.push_str(&format_g17(f)),
        _ => out.push_str(&n.to_string()),
    }
}

/// Pretty-prints `value` with `%.17g` floats. Arrays of scalars stay on one
/// line.
pub fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = |out: &mut String, k: usize| out.extend(std::iter::repeat_n(' ', 2 * k));
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => write_number(out, n),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, v, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                pad(out, indent + 1);
                write_value(out, v, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, v, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Serializes `value` through serde and then [`write_value`].
pub fn to_string_g17<T: serde::Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

pub fn aggregate_to_json(agg: &Aggregate) -> String {
    let vertices = |t: &Tetrahedron| {
        Value::Array(
            t.vertices
                .iter()
                .map(|p| serde_json::json!([p.x, p.y, p.z]))
                .collect(),
        )
    };
    let doc = serde_json::json!({
        "kind": agg.kind,
        "edge_length": agg.edge_length,
        "parameters": agg.parameters,
        "tetrahedra": agg
            .tetrahedra
            .iter()
            .map(|t| serde_json::json!({ "id": t.id, "vertices": vertices(t) }))
            .collect::<Vec<_>>(),
    });
    let mut out = String::new();
    write_value(&mut out, &doc, 0);
    out.push('\n');
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TetrahedronRecord {
    id: usize,
    vertices: [[f64; 3]; 4],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AggregateRecord {
    kind: AggregateKind,
    edge_length: f64,
    #[serde(default)]
    parameters: Parameters,
    tetrahedra: Vec<TetrahedronRecord>,
}

/// Parses and validates an aggregate. Errors name the offending field path
/// and the line and column.
pub fn aggregate_from_json(text: &str) -> Result<Aggregate> {
    let mut de = serde_json::Deserializer::from_str(text);
    let record: AggregateRecord = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| Error::Parse(format!("at `{}`: {}", e.path(), e.inner())))?;
    de.end().map_err(|e| Error::Parse(e.to_string()))?;
    let a = record.edge_length;
    let tetrahedra = record
        .tetrahedra
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            Tetrahedron::new(t.id, t.vertices.map(Point3::from), a, REGULARITY_TOL)
                .map_err(|e| Error::Parse(format!("at `tetrahedra[{i}]`: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Aggregate::new(record.kind, a, record.parameters, tetrahedra)
}
