//! Checks relating the Cauchy–Szegő projection on `b𝒰ⁿ` to the Bergman
//! projection on `𝒰^{n-1}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use smallvec::smallvec;

use crate::error::{domain, Result};
use crate::kernels::bergman_kernel;
use crate::mcquad::{apply_szego_boundary, integrate_boundary, integrate_siegel, McRun, MonteCarloEstimate, SamplerKind};
use crate::siegel::{Coords, SiegelPoint};

/// The function `f` on `𝒰^{n-1}` that is extended to the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BridgeFunction {
    /// `f(w) = height(w)^k e^{-|w|²}`.
    Gaussian { height_power: f64 },
    Zero,
}

impl Default for BridgeFunction {
    fn default() -> Self {
        BridgeFunction::Gaussian { height_power: 1.0 }
    }
}

impl BridgeFunction {
    pub fn eval(&self, w: &SiegelPoint) -> f64 {
        match *self {
            BridgeFunction::Gaussian { height_power } => {
                let r2: f64 = w.coords().iter().map(|c| c.norm_sqr()).sum();
                (height_power * w.height().ln() - r2).exp()
            }
            BridgeFunction::Zero => 0.0,
        }
    }
}

/// Pointwise comparison at one `z̃ ∈ 𝒰^{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointwiseBridge {
    pub point: SiegelPoint,
    /// `(C g)((0, z̃))`.
    pub szego: MonteCarloEstimate<Complex64>,
    /// `π^{-1/p} (P f)(z̃)`.
    pub bergman: MonteCarloEstimate<Complex64>,
    /// `|szego - bergman| / sqrt(stderr² + stderr²)`, zero when both agree
    /// exactly.
    pub z_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BridgeReport {
    pub n: usize,
    pub p: f64,
    /// `‖g‖_{L^p(b𝒰ⁿ)}^p`.
    pub boundary_norm_p: MonteCarloEstimate<f64>,
    /// `‖f‖_{L^p(𝒰^{n-1})}^p`.
    pub bulk_norm_p: MonteCarloEstimate<f64>,
    pub norm_z_score: f64,
    pub pointwise: Vec<PointwiseBridge>,
    pub pass: bool,
}

fn combined_z(d: f64, s1: f64, s2: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        d / (s1 * s1 + s2 * s2).sqrt()
    }
}

/// Points of `𝒰^{m}` at which the pointwise identity is checked: the base
/// point and two others.
pub fn bridge_points(m: usize) -> Vec<SiegelPoint> {
    let make = |zp: Complex64, re: f64, h: f64| {
        let mut c: Coords = smallvec![zp; m];
        let r2 = m as f64 * zp.norm_sqr();
        c.push(Complex64::new(re, r2 + h));
        SiegelPoint::with_height(c, h)
    };
    vec![
        SiegelPoint::basepoint(m),
        make(Complex64::new(0.2, 0.1), 0.4, 0.7),
        make(Complex64::new(0.0, -0.3), -0.8, 1.5),
    ]
}

/// `g(u) = π^{-1/p} f(u_2, …, u_{n+1})`, whose last `n` coordinates lie in
/// `𝒰^{n-1}` with height `|u_1|²`.
fn extension(f: BridgeFunction, p: f64, u: &SiegelPoint) -> f64 {
    let h = u.coords()[0].norm_sqr();
    let w = SiegelPoint::with_height(Coords::from_slice(&u.coords()[1..]), h);
    PI.powf(-1.0 / p) * f.eval(&w)
}

/// Compares `‖g‖_p` with `‖f‖_p` and `C g` with `π^{-1/p} P f` at
/// [`bridge_points`], each within 3 combined standard errors.
pub fn bridge_check(n: usize, p: f64, f: BridgeFunction, run: &McRun) -> Result<BridgeReport> {
    if n == 0 {
        return Err(domain("bridge_check", "requires n ≥ 1"));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(domain("bridge_check", format!("requires 1 < p < ∞, got {p}")));
    }
    let m = n - 1;
    let boundary_norm_p = integrate_boundary(n, &run.reseeded(1), |u| extension(f, p, u).abs().powf(p))?;
    let bulk_norm_p = integrate_siegel(SamplerKind::UniformBall, m, &run.reseeded(2), |w| f.eval(w).abs().powf(p))?;
    let norm_z_score = combined_z(
        (boundary_norm_p.value - bulk_norm_p.value).abs(),
        boundary_norm_p.stderr,
        bulk_norm_p.stderr,
    );
    let scale = PI.powf(-1.0 / p);
    let mut pointwise = Vec::new();
    for (k, zt) in bridge_points(m).into_iter().enumerate() {
        let mut c: Coords = smallvec![Complex64::new(0.0, 0.0)];
        c.extend_from_slice(zt.coords());
        let z = SiegelPoint::with_height(c, zt.height());
        let salt = 10 + 2 * k as u64;
        let szego = apply_szego_boundary(n, &z, &run.reseeded(salt), |u| Complex64::new(extension(f, p, u), 0.0))?;
        let pf = integrate_siegel(SamplerKind::UniformBall, m, &run.reseeded(salt + 1), |w| {
            bergman_kernel(&zt, w).unwrap_or(Complex64::new(f64::NAN, 0.0)) * f.eval(w)
        })?;
        let bergman = MonteCarloEstimate {
            value: pf.value * scale,
            stderr: pf.stderr * scale,
            ..pf
        };
        let z_score = combined_z((szego.value - bergman.value).norm(), szego.stderr, bergman.stderr);
        pointwise.push(PointwiseBridge {
            point: zt,
            szego,
            bergman,
            z_score,
        });
    }
    let pass = norm_z_score <= 3.0 && pointwise.iter().all(|b| b.z_score <= 3.0);
    Ok(BridgeReport {
        n,
        p,
        boundary_norm_p,
        bulk_norm_p,
        norm_z_score,
        pointwise,
        pass,
    })
}
