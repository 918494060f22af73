//! Golden-ratio constants and the closed-form twist and junction angles.
//!
//! Every value is evaluated from its exact expression in double precision;
//! no decimal literals appear on these code paths.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// How an angle was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Evaluated from a named closed form (e.g. `arccos(1/3)`).
    ClosedForm,
    /// Evaluated from a general formula at a specific parameter.
    Evaluated,
}

/// An angle in radians together with how it was produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleValue {
    pub radians: f64,
    pub provenance: Provenance,
}

impl AngleValue {
    fn closed(radians: f64) -> Self {
        Self {
            radians,
            provenance: Provenance::ClosedForm,
        }
    }

    fn evaluated(radians: f64) -> Self {
        Self {
            radians,
            provenance: Provenance::Evaluated,
        }
    }

    pub fn degrees(&self) -> f64 {
        self.radians.to_degrees()
    }
}

/// The golden ratio (1 + √5) / 2.
pub fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// β = arccos((3φ − 1) / 4), the junction angle of the five-ring.
pub fn beta() -> AngleValue {
    AngleValue::closed(((3.0 * phi() - 1.0) / 4.0).acos())
}

/// The dihedral angle of a regular tetrahedron, arccos(1/3).
pub fn gamma_dihedral() -> AngleValue {
    AngleValue::closed((1.0f64 / 3.0).acos())
}

fn check_ring_size(n: u32) -> Result<()> {
    if (3..=5).contains(&n) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "edge-ring size n = {n} is outside the valid range 3 <= n <= 5"
        )))
    }
}

/// Shared square-root term sqrt(cos²(γ/2) − cos²(θ/2)) of the edge-ring formulas.
fn ring_gap_term(theta: f64) -> f64 {
    let half_gamma = gamma_dihedral().radians / 2.0;
    (half_gamma.cos().powi(2) - (theta / 2.0).cos().powi(2)).sqrt()
}

/// Twist angle α_n that closes the gaps of an `n`-ring of tetrahedra about a
/// common edge.
pub fn alpha_edge_ring(n: u32) -> Result<AngleValue> {
    check_ring_size(n)?;
    let theta = 2.0 * PI / n as f64;
    let half_gamma = gamma_dihedral().radians / 2.0;
    let value = (ring_gap_term(theta) / (half_gamma.sin() * (theta / 2.0).cos())).atan();
    Ok(AngleValue::evaluated(value))
}

/// Right-hand side of the β_n formula at an arbitrary central angle `theta`.
///
/// Even in `theta`; at θ = 2π/n it is β_n.
pub fn beta_ring_formula(theta: f64) -> f64 {
    2.0 * (ring_gap_term(theta) / (theta / 2.0).cos()).atan()
}

/// Junction angle β_n produced by twisting an `n`-ring by α_n.
pub fn beta_edge_ring(n: u32) -> Result<AngleValue> {
    check_ring_size(n)?;
    Ok(AngleValue::evaluated(beta_ring_formula(
        2.0 * PI / n as f64,
    )))
}

/// Twist angle α₂₀ = arccos(φ² / (2√2)) for the icosahedral aggregate.
pub fn alpha_icosahedral() -> AngleValue {
    AngleValue::closed((phi().powi(2) / (2.0 * 2f64.sqrt())).acos())
}

/// Junction angle of the twisted icosahedral aggregate. It is β itself; the
/// geometric check lives in the aggregate tests.
pub fn beta_icosahedral() -> AngleValue {
    beta()
}

/// Closed forms for α_n and β_n (n = 3, 4, 5) as listed alongside the plane
/// class table.
pub fn alpha_closed_form(n: u32) -> Result<f64> {
    check_ring_size(n)?;
    let phi = phi();
    Ok(match n {
        3 => (1.0 / 6f64.sqrt()).acos(),
        4 => PI / 4.0,
        _ => (phi.powi(2) / (2.0 * (phi + 2.0)).sqrt()).acos(),
    })
}

pub fn beta_closed_form(n: u32) -> Result<f64> {
    check_ring_size(n)?;
    Ok(match n {
        3 => 2.0 * PI / 3.0 - beta().radians,
        4 => PI / 3.0,
        _ => beta().radians,
    })
}

/// Checks 2π/3 − β = β₃, and that θ = ±2π/3 reproduces 2π/3 − β in the
/// general β_n expression.
pub fn verify_beta3_identity(tolerance: f64) -> bool {
    let lhs = 2.0 * PI / 3.0 - beta().radians;
    let Ok(beta3) = beta_edge_ring(3) else {
        return false;
    };
    let third = 2.0 * PI / 3.0;
    (lhs - beta3.radians).abs() < tolerance
        && (beta_ring_formula(third) - lhs).abs() < tolerance
        && (beta_ring_formula(-third) - lhs).abs() < tolerance
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen from a 40-digit mpmath evaluation of the closed forms.
    const BETA: f64 = 0.270_918_520_456_220_2;
    const GAMMA: f64 = 1.230_959_417_340_774_7;
    const ALPHA3: f64 = 1.150_261_991_510_931_5;
    const ALPHA5: f64 = 0.231_823_804_500_403_06;
    const BETA3: f64 = 1.823_476_581_936_975_3;
    const ALPHA20: f64 = 0.388_139_515_370_188_76;

    #[test]
    fn phi_identities() {
        let p = phi();
        assert_eq!(p, 1.618_033_988_749_895);
        assert!((p * p - p - 1.0).abs() < 1e-15);
        assert!((1.0 / p - (p - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn beta_value() {
        let b = beta();
        assert!((b.radians - BETA).abs() < 1e-15);
        assert!((b.degrees() - 15.522_487_814_070_076).abs() < 1e-12);
        assert!((b.radians.cos() - (3.0 * phi() - 1.0) / 4.0).abs() < 1e-15);
        assert!(((3.0 * phi() - 1.0) / 4.0 - 0.963_525_491_562_421_2).abs() < 1e-15);
        assert!((beta_edge_ring(5).unwrap().radians - b.radians).abs() < 1e-12);
    }

    #[test]
    fn gamma_value() {
        let g = gamma_dihedral().radians;
        assert!((g - GAMMA).abs() < 1e-15);
        assert!((g.cos() - 1.0 / 3.0).abs() < 1e-15);
        assert!(5.0 * g < 2.0 * PI);
    }

    #[test]
    fn alpha_ring_values() {
        assert!((alpha_edge_ring(4).unwrap().radians - PI / 4.0).abs() < 1e-12);
        assert!((alpha_edge_ring(3).unwrap().radians - ALPHA3).abs() < 1e-12);
        assert!((alpha_edge_ring(5).unwrap().radians - ALPHA5).abs() < 1e-12);
        for n in 3..=5 {
            let a = alpha_edge_ring(n).unwrap().radians;
            assert!((a - alpha_closed_form(n).unwrap()).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn beta_ring_values() {
        assert!((beta_edge_ring(4).unwrap().radians - PI / 3.0).abs() < 1e-12);
        assert!((beta_edge_ring(3).unwrap().radians - BETA3).abs() < 1e-12);
        for n in 3..=5 {
            let b = beta_edge_ring(n).unwrap().radians;
            assert!((b - beta_closed_form(n).unwrap()).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn ring_size_out_of_range() {
        for n in [0, 1, 2, 6, 20] {
            let err = alpha_edge_ring(n).unwrap_err().to_string();
            assert!(err.contains("3 <= n <= 5"), "{err}");
            assert!(beta_edge_ring(n).is_err());
        }
    }

    #[test]
    fn alpha_icosahedral_value() {
        let a = alpha_icosahedral().radians;
        assert!((a - ALPHA20).abs() < 1e-15);
        assert!((a.cos() * 2.0 * 2f64.sqrt() - phi().powi(2)).abs() < 1e-14);
        for n in 3..=5 {
            assert!((alpha_edge_ring(n).unwrap().radians - a).abs() > 1e-3);
        }
    }

    #[test]
    fn beta3_identity() {
        assert!(verify_beta3_identity(1e-12));
        assert!(!verify_beta3_identity(1e-300));
        let third = 2.0 * PI / 3.0;
        assert_eq!(beta_ring_formula(third), beta_ring_formula(-third));
    }

    #[test]
    fn half_angle_relation_and_monotonicity() {
        let half_gamma = gamma_dihedral().radians / 2.0;
        let mut prev = f64::INFINITY;
        for n in 3..=5 {
            let a = alpha_edge_ring(n).unwrap().radians;
            let b = beta_edge_ring(n).unwrap().radians;
            assert!(((b / 2.0).tan() - half_gamma.sin() * a.tan()).abs() < 1e-12);
            assert!(a < prev);
            prev = a;
            assert!(a > 0.0 && a <= PI / 2.0);
            assert!(b > 0.0 && b < PI);
        }
        // β₃ = 2π/3 − β is the one returned angle above π/2.
        assert!(beta_edge_ring(3).unwrap().radians > PI / 2.0);
        assert!(beta_edge_ring(4).unwrap().radians <= PI / 2.0);
        assert!(alpha_icosahedral().radians <= PI / 2.0);
    }
}
