//! SVG 1.1 drawings at 100 units per edge length, y up.

use std::fmt::Write;

use crate::aggregate::Aggregate;
use crate::analysis::{junction_projection, FaceJunction};
use crate::error::Result;
use crate::geom::{direction, Vec3};

const UNITS_PER_EDGE: f64 = 100.0;
const MARGIN: f64 = 20.0;

fn num(x: f64) -> String {
    // Four decimals keep golden files stable; -0 is normalized.
    let s = format!("{:.4}", x);
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".into()
    } else {
        s
    }
}

struct Canvas {
    min: [f64; 2],
    max: [f64; 2],
    body: String,
}

impl Canvas {
    fn new(points: impl Iterator<Item = [f64; 2]>) -> Self {
        let (mut min, mut max) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
        for p in points {
            for i in 0..2 {
                min[i] = min[i].min(p[i]);
                max[i] = max[i].max(p[i]);
            }
        }
        Self { min, max, body: String::new() }
    }

    /// Flips y so the drawing reads with y up.
    fn pt(&self, p: [f64; 2]) -> String {
        format!("{},{}", num(p[0]), num(-p[1]))
    }

    fn polygon(&mut self, pts: &[[f64; 2]], class: &str) {
        let joined: Vec<String> = pts.iter().map(|p| self.pt(*p)).collect();
        let _ = writeln!(self.body, "  <polygon class=\"{class}\" points=\"{}\"/>", joined.join(" "));
    }

    fn finish(self, style: &str, label: Option<&str>) -> String {
        let width = self.max[0] - self.min[0] + 2.0 * MARGIN;
        let height = self.max[1] - self.min[1] + 2.0 * MARGIN + if label.is_some() { 20.0 } else { 0.0 };
        let x0 = self.min[0] - MARGIN;
        let y0 = -self.max[1] - MARGIN;
        let mut out = String::new();
        let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
            num(width),
            num(height),
            num(x0),
            num(y0),
            num(width),
            num(height)
        );
        let _ = writeln!(out, "  <style>{style}</style>");
        out.push_str(&self.body);
        if let Some(text) = label {
            let _ = writeln!(
                out,
                "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{text}</text>",
                num(x0 + 4.0),
                num(y0 + height - 6.0)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Both faces of a junction projected into its plane, the lower face in blue
/// and the upper in red, with centroid markers and a label giving the
/// minimal turn in degrees and the offset in δ units.
pub fn junction_svg(j: &FaceJunction) -> String {
    let p = junction_projection(j);
    let s = UNITS_PER_EDGE / j.edge_length;
    let scale = |q: [f64; 2]| [q[0] * s, q[1] * s];
    let lower: Vec<_> = p.lower.iter().map(|q| scale(*q)).collect();
    let upper: Vec<_> = p.upper.iter().map(|q| scale(*q)).collect();
    let mut c = Canvas::new(lower.iter().chain(&upper).copied());
    c.polygon(&lower, "lower");
    c.polygon(&upper, "upper");
    for (class, q) in [("lower", [0.0, 0.0]), ("upper", scale(p.upper_centroid))] {
        let _ = writeln!(
            c.body,
            "  <circle class=\"{class} marker\" cx=\"{}\" cy=\"{}\" r=\"2\"/>",
            num(q[0]),
            num(-q[1])
        );
    }
    let label = format!(
        "tets {}/{}: angle {:.6}\u{b0}, offset {:.6} \u{3b4}",
        j.faces.0.tet_id,
        j.faces.1.tet_id,
        j.angle_min.to_degrees(),
        j.offset_in_delta
    );
    c.finish(
        ".lower{fill:#3b6fb6;fill-opacity:0.35;stroke:#3b6fb6}\
         .upper{fill:#c0392b;fill-opacity:0.35;stroke:#c0392b}\
         .marker{fill-opacity:1}",
        Some(&label),
    )
}

/// Orthographic projection of every face along `view`, drawn back to front.
pub fn aggregate_projection_svg(agg: &Aggregate, view: &Vec3) -> Result<String> {
    let d = direction(*view)?;
    let helper = if d.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let e1 = d.cross(&helper).normalize();
    let e2 = d.cross(&e1);
    let s = UNITS_PER_EDGE / agg.edge_length;
    let mut faces: Vec<(f64, usize, Vec<[f64; 2]>)> = Vec::new();
    for t in &agg.tetrahedra {
        for f in 0..4 {
            let pts = t.face_vertices(f);
            let depth = pts.iter().map(|p| p.coords.dot(&d)).sum::<f64>() / 3.0;
            let proj = pts.iter().map(|p| [p.coords.dot(&e1) * s, p.coords.dot(&e2) * s]).collect();
            faces.push((depth, t.id, proj));
        }
    }
    // Farthest first: depth grows toward the viewer along -view.
    faces.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut c = Canvas::new(faces.iter().flat_map(|f| f.2.iter().copied()));
    for (_, id, proj) in &faces {
        c.polygon(proj, &format!("t{}", id % 6));
    }
    Ok(c.finish(
        "polygon{fill-opacity:0.55;stroke:#222;stroke-width:0.6}\
         .t0{fill:#4e79a7}.t1{fill:#f28e2b}.t2{fill:#59a14f}\
         .t3{fill:#e15759}.t4{fill:#76b7b2}.t5{fill:#edc948}",
        None,
    ))
}
