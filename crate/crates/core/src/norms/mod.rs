//! Operator norms on `𝒰ⁿ`: closed forms, bounds, and their numerical
//! certificates.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::kernels::{conjugate, factorial};
use crate::specfun::{gamma_ratio, ln_gamma};

mod bridge;
mod identities;
mod rayleigh;
mod schur;

pub use bridge::{bridge_check, bridge_points, BridgeFunction, BridgeReport, PointwiseBridge};
pub use identities::{
    verify_identity, IdentityCase, IdentityReport, IdentityTag, RESIDUAL_FLOOR, STDERR_MULTIPLE,
};
pub use rayleigh::{
    default_t_grid, rayleigh_lower_bergman, rayleigh_lower_t, rayleigh_lower_t_case, BergmanRayleigh,
    DEFAULT_EPS_FRACTIONS, DEFAULT_T_FRACTIONS,
};
pub use schur::{schur_certificate, SchurReport, SchurSide};

fn check_p_open(op: &'static str, p: f64) -> Result<()> {
    if p > 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(domain(op, format!("requires 1 < p < ∞, got {p}")))
    }
}

/// `‖T_α‖_{p→p} = (n+1)! Γ(1+α-1/p) Γ(1/p) / Γ²((n+2+α)/2)`.
pub fn t_alpha_norm_exact(n: usize, alpha: f64, p: f64) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(domain("t_alpha_norm_exact", format!("requires α > -1, got {alpha}")));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(domain("t_alpha_norm_exact", format!("requires 1 ≤ p < ∞, got {p}")));
    }
    if !(p * (1.0 + alpha) > 1.0) {
        return Err(domain(
            "t_alpha_norm_exact",
            format!("T_α is unbounded unless p(1+α) > 1; got p(1+α) = {}", p * (1.0 + alpha)),
        ));
    }
    let b = 0.5 * (n as f64 + 2.0 + alpha);
    let log = ln_gamma(1.0 + alpha - 1.0 / p)? + ln_gamma(1.0 / p)? - 2.0 * ln_gamma(b)?;
    Ok(factorial(n + 1) * log.exp())
}

/// Lower and upper bounds for the Bergman projection on `L^p(𝒰ⁿ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `Γ(m/p) Γ(m/q) / Γ²(m/2)`.
fn gamma_pq(m: f64, p: f64) -> Result<f64> {
    let q = conjugate(p);
    gamma_ratio(&[m / p, m / q], &[m / 2.0, m / 2.0])
}

pub fn bergman_bounds(n: usize, p: f64) -> Result<BergmanBounds> {
    check_p_open("bergman_bounds", p)?;
    Ok(BergmanBounds {
        lower: gamma_pq(n as f64 + 2.0, p)?,
        upper: t_alpha_norm_exact(n, 0.0, p)?,
    })
}

/// `‖B‖_{p→p} = π/(p sin(π/p)) Π_{k=1}^{n+1} (1 + 1/(kp))`, equal to 1 at
/// `p = ∞`.
pub fn berezin_norm(n: usize, p: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(domain("berezin_norm", format!("requires 1 < p ≤ ∞, got {p}")));
    }
    if p.is_infinite() {
        return Ok(1.0);
    }
    let x = PI / p;
    let prod: f64 = (1..=n + 1).map(|k| 1.0 + 1.0 / (k as f64 * p)).product();
    Ok(x / x.sin() * prod)
}

/// Lower bound `Γ((n+1)/p) Γ((n+1)/q) / Γ²((n+1)/2)` for the Cauchy–Szegő
/// projection on `L^p(b𝒰ⁿ)`.
pub fn szego_lower(n: usize, p: f64) -> Result<f64> {
    check_p_open("szego_lower", p)?;
    gamma_pq(n as f64 + 1.0, p)
}

/// Which operator a [`NormRow`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormSource {
    Bergman,
    TAlpha,
    Berezin,
    CauchySzego,
}

impl NormSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            NormSource::Bergman => "bergman",
            NormSource::TAlpha => "t_alpha",
            NormSource::Berezin => "berezin",
            NormSource::CauchySzego => "cauchy_szego",
        }
    }
}

/// One line of a norm table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRow {
    pub n: usize,
    pub p: f64,
    pub alpha: Option<f64>,
    pub lower: f64,
    pub upper: Option<f64>,
    pub exact: Option<f64>,
    pub conjectured: Option<f64>,
    pub source: NormSource,
}

/// Which rows [`norm_table`] should produce for each `p`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TableSelection {
    pub bergman: bool,
    pub alpha: Option<f64>,
    pub berezin: bool,
    pub cauchy_szego: bool,
}

impl TableSelection {
    pub fn bergman_only() -> Self {
        Self {
            bergman: true,
            ..Default::default()
        }
    }

    pub fn all(alpha: Option<f64>) -> Self {
        Self {
            bergman: true,
            alpha,
            berezin: true,
            cauchy_szego: true,
        }
    }
}

/// Norm rows for each `p` of the grid, in grid order.
pub fn norm_table(n: usize, p_grid: &[f64], selection: TableSelection) -> Result<Vec<NormRow>> {
    let mut rows = Vec::new();
    for &p in p_grid {
        check_p_open("norm_table", p)?;
        if selection.bergman {
            let b = bergman_bounds(n, p)?;
            rows.push(NormRow {
                n,
                p,
                alpha: None,
                lower: b.lower,
                upper: Some(b.upper),
                exact: None,
                conjectured: Some(b.lower),
                source: NormSource::Bergman,
            });
        }
        if let Some(alpha) = selection.alpha {
            let v = t_alpha_norm_exact(n, alpha, p)?;
            rows.push(NormRow {
                n,
                p,
                alpha: Some(alpha),
                lower: v,
                upper: Some(v),
                exact: Some(v),
                conjectured: None,
                source: NormSource::TAlpha,
            });
        }
        if selection.berezin {
            let v = berezin_norm(n, p)?;
            rows.push(NormRow {
                n,
                p,
                alpha: None,
                lower: v,
                upper: Some(v),
                exact: Some(v),
                conjectured: None,
                source: NormSource::Berezin,
            });
        }
        if selection.cauchy_szego {
            let v = szego_lower(n, p)?;
            rows.push(NormRow {
                n,
                p,
                alpha: None,
                lower: v,
                upper: None,
                exact: None,
                conjectured: Some(v),
                source: NormSource::CauchySzego,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert!((t_alpha_norm_exact(0, 0.0, 2.0).unwrap() - PI).abs() < 1e-12);
        assert!((berezin_norm(0, 2.0).unwrap() - 0.75 * PI).abs() < 1e-12);
        assert_eq!(berezin_norm(3, f64::INFINITY).unwrap(), 1.0);
        let b = bergman_bounds(0, 2.0).unwrap();
        assert!((b.lower - 1.0).abs() < 1e-14 && (b.upper - PI).abs() < 1e-12);
        assert!(t_alpha_norm_exact(0, 0.0, 1.0).is_err());
        assert!(t_alpha_norm_exact(1, -0.5, 2.0).is_err());
        for p in [1.2, 1.7, 3.0, 9.0] {
            let x = PI / p;
            assert!((szego_lower(0, p).unwrap() - 1.0 / x.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn table_rows() {
        let rows = norm_table(0, &[1.5, 2.0, 3.0], TableSelection::bergman_only()).unwrap();
        assert_eq!(rows.len(), 3);
        assert!((rows[1].lower - 1.0).abs() < 1e-14);
        let rows = norm_table(1, &[2.5], TableSelection::all(Some(0.5))).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(norm_table(0, &[1.0], TableSelection::bergman_only()).is_err());
    }
}
