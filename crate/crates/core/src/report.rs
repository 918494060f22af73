//! Analysis reports with pass/fail checks, serialized deterministically.

use serde::Serialize;
use serde_json::Value;

use crate::aggregate::{self, Aggregate, AggregateKind, Parameters};
use crate::analysis::{self, FaceJunction};
use crate::error::Result;
use crate::geom::{FaceRef, ToleranceConfig};
use crate::helix;

pub const TOOL_VERSION: &str = concat!("tetragold ", env!("CARGO_PKG_VERSION"));

/// A measured quantity against its expected value. Counts compare exactly
/// (`tolerance` 0); composite values are arrays.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: Value,
    pub expected: Value,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn close(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            passed: (measured - expected).abs() < tolerance,
            measured: measured.into(),
            expected: expected.into(),
            tolerance,
            detail: None,
        }
    }

    /// Passes when `measured < bound`.
    pub fn below(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            passed: measured < bound,
            measured: measured.into(),
            expected: 0.0.into(),
            tolerance: bound,
            detail: None,
        }
    }

    pub fn exact<T: Serialize + PartialEq>(name: impl Into<String>, measured: T, expected: T) -> Self {
        Self {
            name: name.into(),
            passed: measured == expected,
            measured: serde_json::to_value(&measured).unwrap_or(Value::Null),
            expected: serde_json::to_value(&expected).unwrap_or(Value::Null),
            tolerance: 0.0,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateDescriptor {
    pub kind: AggregateKind,
    pub edge_length: f64,
    pub tetrahedra: usize,
    pub parameters: Parameters,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JunctionRecord {
    pub lower: FaceRef,
    pub upper: FaceRef,
    pub angle_raw: f64,
    pub angle_min: f64,
    pub angle_min_degrees: f64,
    pub offset_in_delta: f64,
    pub signed_offset_in_delta: f64,
    pub coplanarity_residual: f64,
    pub overlap_area: f64,
}

impl From<&FaceJunction> for JunctionRecord {
    fn from(j: &FaceJunction) -> Self {
        Self {
            lower: j.faces.0,
            upper: j.faces.1,
            angle_raw: j.angle_raw,
            angle_min: j.angle_min,
            angle_min_degrees: j.angle_min.to_degrees(),
            offset_in_delta: j.offset_in_delta,
            signed_offset_in_delta: j.signed_offset_in_delta,
            coplanarity_residual: j.coplanarity_residual,
            overlap_area: j.overlap_area,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggregate_descriptor: Option<AggregateDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane_class_count_before: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plane_class_count_after: Option<usize>,
    pub junctions: Vec<JunctionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_overlap_volume: Option<f64>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        Self {
            tool_version: TOOL_VERSION.into(),
            aggregate_descriptor: None,
            plane_class_count_before: None,
            plane_class_count_after: None,
            junctions: Vec::new(),
            period: None,
            symmetry_order: None,
            max_overlap_volume: None,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        crate::io::json::to_string_g17(self)
    }
}

/// Which analyses [`analyze`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub planes: bool,
    pub junctions: bool,
    pub period: bool,
    pub symmetry: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            planes: true,
            junctions: true,
            period: true,
            symmetry: true,
        }
    }
}

/// Largest period searched by [`analyze`].
pub const MAX_PERIOD: usize = 20;

/// Plane-class counts of the untwisted and twisted forms of `agg`. The
/// missing form is rebuilt from the recorded parameters; helices have no
/// twist and report their own count twice.
fn before_after_counts(agg: &Aggregate, tol: &ToleranceConfig) -> (Option<usize>, Option<usize>) {
    let count = |a: &Aggregate| analysis::plane_classes(a, tol).count;
    let own = count(agg);
    let a = agg.edge_length;
    match agg.kind {
        AggregateKind::EdgeRing | AggregateKind::Icosahedral if agg.parameters.twisted => {
            let untwisted = match (agg.kind, agg.parameters.n) {
                (AggregateKind::EdgeRing, Some(n)) => aggregate::build_edge_ring(n, a).ok(),
                (AggregateKind::Icosahedral, _) => aggregate::build_icosahedral(a).ok(),
                _ => None,
            };
            (untwisted.as_ref().map(count), Some(own))
        }
        AggregateKind::EdgeRing => (Some(own), aggregate::twist_edge_ring(agg).ok().as_ref().map(count)),
        AggregateKind::Icosahedral => (Some(own), aggregate::twist_icosahedral(agg).ok().as_ref().map(count)),
        AggregateKind::BcHelix | AggregateKind::ModifiedBcHelix => (Some(own), Some(own)),
    }
}

/// Runs the selected analyses on `agg`.
///
/// Regularity is always checked. Non-interpenetration is checked for every
/// kind except modified helices, whose `T_k` and `T_{k+2}` overlap by about
/// 2.09e-6·a³; for those the volume is only reported. Twisted rings and the
/// icosahedral aggregate also check that junctions cover the intended
/// neighbour pairs.
pub fn analyze(agg: &Aggregate, opts: AnalysisOptions, tol: &ToleranceConfig) -> Result<Report> {
    let a = agg.edge_length;
    let overlap = agg.max_overlap_volume();
    let mut checks = vec![Check::below("regularity_residual", agg.regularity_residual(), 1e-9 * a)];
    if agg.kind != AggregateKind::ModifiedBcHelix {
        checks.push(Check::below("max_overlap_volume", overlap, 1e-9 * a.powi(3)));
    }
    let mut report = Report::from_checks(Vec::new());
    report.max_overlap_volume = Some(overlap);
    report.aggregate_descriptor = Some(AggregateDescriptor {
        kind: agg.kind,
        edge_length: a,
        tetrahedra: agg.len(),
        parameters: agg.parameters.clone(),
    });
    if opts.planes {
        (report.plane_class_count_before, report.plane_class_count_after) = before_after_counts(agg, tol);
    }
    if opts.junctions {
        let found = analysis::find_face_junctions(agg, tol);
        let closes_gaps = matches!(agg.kind, AggregateKind::EdgeRing | AggregateKind::Icosahedral)
            && agg.parameters.twisted;
        if closes_gaps {
            let mut pairs: Vec<_> = found.iter().map(|j| (j.faces.0.tet_id, j.faces.1.tet_id)).collect();
            pairs.sort_unstable();
            checks.push(Check::exact(
                "junctions_cover_neighbour_pairs",
                pairs,
                agg.expected_adjacent_pairs(),
            ));
        }
        report.junctions = found.iter().map(JunctionRecord::from).collect();
    }
    if agg.kind.is_helix() && agg.len() >= 2 {
        if opts.period {
            let max_m = MAX_PERIOD.min(agg.len() - 1);
            report.period = helix::detect_period(agg, max_m, tol)?;
        }
        if opts.symmetry {
            report.symmetry_order = Some(helix::projected_symmetry_order(agg, tol)?);
        }
    }
    report.passed = checks.iter().all(|c| c.passed);
    report.checks = checks;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregate::{build_edge_ring, twist_edge_ring};
    use crate::helix::{build_bc_helix, build_modified_helix, Chirality, HelixSpec};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn twisted_five_ring() {
        let agg = twist_edge_ring(&build_edge_ring(5, 1.0).unwrap()).unwrap();
        let r = analyze(&agg, AnalysisOptions::default(), &tol()).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!((r.plane_class_count_before, r.plane_class_count_after), (Some(20), Some(10)));
        assert_eq!(r.junctions.len(), 5);
        for j in &r.junctions {
            assert!((j.angle_min - crate::golden::beta().radians).abs() < 1e-9);
            assert!((j.offset_in_delta - 1.0).abs() < 1e-9);
        }
        assert_eq!(r.period, None);
    }

    #[test]
    fn untwisted_ring_reports_twisted_count() {
        let r = analyze(&build_edge_ring(3, 1.0).unwrap(), AnalysisOptions::default(), &tol()).unwrap();
        assert_eq!((r.plane_class_count_before, r.plane_class_count_after), (Some(12), Some(9)));
        assert!(r.junctions.is_empty());
    }

    #[test]
    fn helices() {
        let bc = build_bc_helix(&HelixSpec::canonical(10, Chirality::Right, 1.0)).unwrap();
        let r = analyze(&bc, AnalysisOptions::default(), &tol()).unwrap();
        assert_eq!(r.plane_class_count_after, Some(31));
        assert_eq!((r.period, r.symmetry_order), (None, Some(1)));

        let three = build_modified_helix(&HelixSpec::three_bc(12, 1.0)).unwrap();
        let r = analyze(&three, AnalysisOptions::default(), &tol()).unwrap();
        assert_eq!((r.period, r.symmetry_order), (Some(3), Some(3)));
        assert_eq!(r.junctions.len(), 11);
    }

    #[test]
    fn options_are_respected() {
        let agg = build_modified_helix(&HelixSpec::five_bc(8, 1.0)).unwrap();
        let opts = AnalysisOptions {
            planes: false,
            junctions: false,
            period: true,
            symmetry: false,
        };
        let r = analyze(&agg, opts, &tol()).unwrap();
        assert_eq!(r.plane_class_count_before, None);
        assert!(r.junctions.is_empty());
        assert_eq!((r.period, r.symmetry_order), (Some(5), None));
    }

    #[test]
    fn json_is_deterministic() {
        let agg = twist_edge_ring(&build_edge_ring(4, 1.0).unwrap()).unwrap();
        let a = analyze(&agg, AnalysisOptions::default(), &tol()).unwrap().to_json().unwrap();
        let b = analyze(&agg, AnalysisOptions::default(), &tol()).unwrap().to_json().unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("{\n  \"aggregate_descriptor\""));
    }

    #[test]
    fn failed_checks_listed() {
        let r = Report::from_checks(vec![Check::close("x", 1.0, 2.0, 0.1), Check::exact("y", 3, 3)]);
        assert!(!r.passed);
        assert_eq!(r.failed_checks().map(|c| c.name.as_str()).collect::<Vec<_>>(), ["x"]);
    }
}
