//! Built-in verification suites. Each builds its own aggregates.

use std::f64::consts::PI;
use std::str::FromStr;

use serde_json::json;

use crate::aggregate::{build_edge_ring, build_icosahedral, twist_edge_ring, twist_icosahedral, Aggregate};
use crate::analysis::{self, find_face_junctions, plane_classes, standard_junctions, JunctionKind};
use crate::error::{Error, Result};
use crate::geom::ToleranceConfig;
use crate::golden;
use crate::helix::{self, build_bc_helix, build_modified_helix, Chirality, HelixSpec};
use crate::report::{Check, Report};

/// Tolerances for closed-form identities, junction angles and δ offsets.
pub const IDENTITY_TOL: f64 = 1e-12;
pub const ANGLE_TOL: f64 = 1e-9;
pub const OFFSET_TOL: f64 = 1e-6;

/// Longest helix built by the table and helix suites.
pub const MAX_HELIX: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Table1,
    Junctions,
    Helix,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Suite::Identities),
            "table1" => Ok(Suite::Table1),
            "junctions" => Ok(Suite::Junctions),
            "helix" => Ok(Suite::Helix),
            "all" => Ok(Suite::All),
            _ => Err(Error::domain(format!("unknown suite `{s}`"))),
        }
    }
}

pub fn run_suite(suite: Suite, tol: &ToleranceConfig) -> Result<Report> {
    let checks = match suite {
        Suite::Identities => identities()?,
        Suite::Table1 => table1(tol)?,
        Suite::Junctions => junctions(tol)?,
        Suite::Helix => helix_checks(tol)?,
        Suite::All => {
            let mut all = identities()?;
            all.extend(table1(tol)?);
            all.extend(junctions(tol)?);
            all.extend(helix_checks(tol)?);
            all.extend(properties()?);
            all
        }
    };
    Ok(Report::from_checks(checks))
}

pub fn identities() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 3..=5 {
        checks.push(Check::close(
            format!("identities/alpha_{n}_closed_form"),
            golden::alpha_edge_ring(n)?.radians,
            golden::alpha_closed_form(n)?,
            IDENTITY_TOL,
        ));
        checks.push(Check::close(
            format!("identities/beta_{n}_closed_form"),
            golden::beta_edge_ring(n)?.radians,
            golden::beta_closed_form(n)?,
            IDENTITY_TOL,
        ));
    }
    let third = 2.0 * PI / 3.0;
    let complement = third - golden::beta().radians;
    checks.push(Check::close(
        "identities/third_turn_minus_beta_is_beta_3",
        complement,
        golden::beta_edge_ring(3)?.radians,
        IDENTITY_TOL,
    ));
    for (name, theta) in [("plus", third), ("minus", -third)] {
        checks.push(Check::close(
            format!("identities/ring_formula_at_{name}_third_turn"),
            golden::beta_ring_formula(theta),
            complement,
            IDENTITY_TOL,
        ));
    }
    Ok(checks)
}

fn count(agg: &Aggregate, tol: &ToleranceConfig) -> usize {
    plane_classes(agg, tol).count
}

/// One check per row of the plane-class table, comparing `[before, after]`.
pub fn table1(tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (n, expected) in [(3u32, [12, 9]), (4, [16, 4]), (5, [20, 10])] {
        let ring = build_edge_ring(n, 1.0)?;
        let measured = [count(&ring, tol), count(&twist_edge_ring(&ring)?, tol)];
        checks.push(Check::exact(format!("table1/{n}_ring"), measured, expected));
    }
    let ico = build_icosahedral(1.0)?;
    let measured = [count(&ico, tol), count(&twist_icosahedral(&ico)?, tol)];
    checks.push(Check::exact("table1/icosahedral", measured, [60, 10]));

    let canonical: Vec<usize> = [2, 10, 30]
        .iter()
        .map(|&n| Ok(count(&build_bc_helix(&HelixSpec::canonical(n, Chirality::Right, 1.0))?, tol)))
        .collect::<Result<_>>()?;
    for (name, spec, saturated) in [
        ("3bc_helix", HelixSpec::three_bc(1, 1.0), 9),
        ("5bc_helix", HelixSpec::five_bc(1, 1.0), 10),
    ] {
        let (n0, after) = helix::plane_class_saturation(&spec, MAX_HELIX, tol)?;
        checks.push(
            Check::exact(
                format!("table1/{name}"),
                json!({ "before_at_2_10_30": canonical, "after": after }),
                json!({ "before_at_2_10_30": [7, 31, 91], "after": saturated }),
            )
            .with_detail(format!("count constant from n = {n0} through {MAX_HELIX}")),
        );
    }
    Ok(checks)
}

pub fn junctions(tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let beta = golden::beta().radians;
    let mut checks = Vec::new();
    let twisted = [
        ("3_ring", twist_edge_ring(&build_edge_ring(3, 1.0)?)?),
        ("4_ring", twist_edge_ring(&build_edge_ring(4, 1.0)?)?),
        ("5_ring", twist_edge_ring(&build_edge_ring(5, 1.0)?)?),
        ("icosahedral", twist_icosahedral(&build_icosahedral(1.0)?)?),
    ];
    for (name, agg) in &twisted {
        let found = find_face_junctions(agg, tol);
        let mut pairs: Vec<_> = found.iter().map(|j| (j.faces.0.tet_id, j.faces.1.tet_id)).collect();
        pairs.sort_unstable();
        checks.push(Check::exact(
            format!("junctions/{name}/pairs"),
            pairs,
            agg.expected_adjacent_pairs(),
        ));
        let coplanarity = found.iter().map(|j| j.coplanarity_residual).fold(0.0, f64::max);
        checks.push(Check::below(format!("junctions/{name}/coplanarity"), coplanarity, 1e-9 * agg.edge_length));
        let (label, deviation) = if *name == "4_ring" {
            ("angle_raw_is_third_of_pi", found.iter().map(|j| (j.angle_raw - PI / 3.0).abs()).fold(0.0, f64::max))
        } else {
            ("angle_min_is_beta", found.iter().map(|j| (j.angle_min - beta).abs()).fold(0.0, f64::max))
        };
        checks.push(Check::below(format!("junctions/{name}/{label}"), deviation, ANGLE_TOL));
    }

    let unit = standard_junctions(1.0, tol)?;
    let double = standard_junctions(2.0, tol)?;
    let family = analysis::verify_delta_family(&unit)?;
    for e in &family.entries {
        let kind = e.kind.as_str();
        checks.push(Check::close(format!("delta_family/{kind}/angle_min"), e.angle_min, beta, ANGLE_TOL));
        checks.push(Check::close(
            format!("delta_family/{kind}/offset_in_delta"),
            e.offset_in_delta,
            e.expected_signed_offset.abs(),
            OFFSET_TOL,
        ));
        let mut signed = Check::close(
            format!("delta_family/{kind}/signed_offset_in_delta"),
            e.signed_offset_in_delta,
            e.expected_signed_offset,
            OFFSET_TOL,
        );
        if let Some(d) = &e.diagnostic {
            signed = signed.with_detail(d.clone());
        }
        checks.push(signed);
    }
    for kind in JunctionKind::ALL {
        let pick = |js: &[(JunctionKind, analysis::FaceJunction)]| {
            js.iter().find(|(k, _)| *k == kind).map(|(_, j)| j.offset_in_delta).unwrap_or(f64::NAN)
        };
        checks.push(Check::close(
            format!("delta_family/{}/scale_invariance", kind.as_str()),
            pick(&double),
            pick(&unit),
            OFFSET_TOL,
        ));
    }
    Ok(checks)
}

pub fn helix_checks(tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (name, spec, order) in [
        ("5bc", HelixSpec::five_bc(MAX_HELIX, 1.0), 5),
        ("3bc", HelixSpec::three_bc(MAX_HELIX, 1.0), 3),
    ] {
        let agg = build_modified_helix(&spec)?;
        checks.push(Check::exact(format!("helix/{name}/period"), helix::detect_period(&agg, 10, tol)?, Some(order)));
        checks.push(Check::exact(
            format!("helix/{name}/symmetry_order"),
            helix::projected_symmetry_order(&agg, tol)?,
            order,
        ));
    }
    let canonical = build_bc_helix(&HelixSpec::canonical(MAX_HELIX, Chirality::Right, 1.0))?;
    checks.push(Check::exact("helix/canonical/period_up_to_20", helix::detect_period(&canonical, 20, tol)?, None));
    checks.push(Check::exact(
        "helix/canonical/symmetry_order",
        helix::projected_symmetry_order(&canonical, tol)?,
        1,
    ));
    checks.push(Check::close(
        "helix/canonical/step_angle",
        helix::helix_axis(&canonical, tol)?.step_angle,
        (-2.0f64 / 3.0).acos(),
        ANGLE_TOL,
    ));
    Ok(checks)
}

/// Isometry of every twisted or rotated aggregate; non-interpenetration of
/// the twisted ones and the canonical helix. Modified helices are excluded
/// from the latter: `T_k` and `T_{k+2}` overlap slightly by construction.
pub fn properties() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let contact_only = [
        ("3_ring", twist_edge_ring(&build_edge_ring(3, 1.0)?)?),
        ("4_ring", twist_edge_ring(&build_edge_ring(4, 1.0)?)?),
        ("5_ring", twist_edge_ring(&build_edge_ring(5, 1.0)?)?),
        ("icosahedral", twist_icosahedral(&build_icosahedral(1.0)?)?),
        ("bc", build_bc_helix(&HelixSpec::canonical(12, Chirality::Right, 1.0))?),
    ];
    let rotated = [
        ("5bc", build_modified_helix(&HelixSpec::five_bc(12, 1.0))?),
        ("3bc", build_modified_helix(&HelixSpec::three_bc(12, 1.0))?),
    ];
    for (name, agg) in contact_only.iter().chain(&rotated) {
        let a = agg.edge_length;
        checks.push(Check::below(format!("properties/{name}/edge_lengths"), agg.regularity_residual(), 1e-12 * a));
    }
    for (name, agg) in &contact_only {
        let a = agg.edge_length;
        checks.push(Check::below(format!("properties/{name}/overlap_volume"), agg.max_overlap_volume(), 1e-9 * a.powi(3)));
    }
    Ok(checks)
}
