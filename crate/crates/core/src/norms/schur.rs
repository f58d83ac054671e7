//! Schur-test certificates for `T_α` with the test function
//! `g(z) = height(z)^{-1/(pq)}`.

use crate::error::{domain, Result};
use crate::kernels::{t_alpha_kernel, TAlphaParams};
use crate::mcquad::{integrate_siegel, McRun, MonteCarloEstimate, SamplerKind};
use crate::siegel::SiegelPoint;

use super::t_alpha_norm_exact;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurSide {
    /// `∫ K(z, w) g(w)^q dV(w) = C g(z)^q`.
    Row,
    /// `∫ K(z, w) g(z)^p dV(z) = C g(w)^p`.
    Column,
}

impl SchurSide {
    pub fn as_str(&self) -> &'static str {
        match self {
            SchurSide::Row => "row",
            SchurSide::Column => "column",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchurReport {
    pub side: SchurSide,
    /// `C = ‖T_α‖_{p→p}`.
    pub constant: f64,
    /// `C g^q` (row) or `C g^p` (column) at the fixed point.
    pub closed: f64,
    pub mc: MonteCarloEstimate<f64>,
    /// `|mc - closed| / stderr`.
    pub z_score: f64,
    pub pass: bool,
}

/// Estimates the Schur integral on `side` at the fixed point `point` and
/// checks it equals its closed value within 3 standard errors.
pub fn schur_certificate(
    params: &TAlphaParams,
    point: &SiegelPoint,
    side: SchurSide,
    run: &McRun,
) -> Result<SchurReport> {
    if !(params.p > 1.0 && params.p.is_finite()) {
        return Err(domain("schur_certificate", format!("requires 1 < p < ∞, got {}", params.p)));
    }
    let c = t_alpha_norm_exact(params.n, params.alpha, params.p)?;
    if !(point.height() > 0.0) {
        return Err(domain("schur_certificate", "the fixed point must be interior"));
    }
    let n = params.n;
    let decay = n as f64 + 2.0 + params.alpha;
    let (exponent, gamma) = match side {
        SchurSide::Row => (-1.0 / params.p, params.alpha - 1.0 / params.p),
        SchurSide::Column => (-1.0 / params.q, -1.0 / params.q),
    };
    let kind = SamplerKind::matched(n, gamma, decay);
    let mc = match side {
        SchurSide::Row => integrate_siegel(kind, n, run, |w| {
            t_alpha_kernel(params, point, w).unwrap_or(f64::NAN) * w.height().powf(exponent)
        })?,
        SchurSide::Column => integrate_siegel(kind, n, run, |z| {
            t_alpha_kernel(params, z, point).unwrap_or(f64::NAN) * z.height().powf(exponent)
        })?,
    };
    let closed = c * point.height().powf(exponent);
    let z_score = mc.z_score(closed);
    Ok(SchurReport {
        side,
        constant: c,
        closed,
        mc,
        z_score,
        pass: z_score <= 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn row_at_basepoint() {
        let params = TAlphaParams::new(0, 0.0, 2.0).unwrap();
        let r = schur_certificate(&params, &SiegelPoint::basepoint(0), SchurSide::Row, &McRun::new(100_000, 4)).unwrap();
        assert!((r.closed - PI).abs() < 1e-12);
        assert!(r.pass, "{r:?}");
    }
}
