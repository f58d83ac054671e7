//! Integral identities on `𝒰ⁿ`, `b𝒰ⁿ`, the ball and the sphere, each paired
//! with a Monte Carlo estimate of its left-hand side.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Error, Result};
use crate::mcquad::{
    integrate_ball, integrate_ball_with, integrate_boundary, integrate_siegel, integrate_sphere, McRun,
    MonteCarloEstimate, SamplerKind,
};
use crate::siegel::{
    cayley_phi, heis_apply, heis_inverse, rho_basepoint, rho_unchecked, BallPoint, Coords, HeisenbergElement,
    SiegelPoint,
};
use crate::specfun::{gamma_ratio, hyp2f1, hyp2f1_complement, ln_gamma, Hyp2F1Query};

/// Default absolute floor of the residual tolerance.
pub const RESIDUAL_FLOOR: f64 = 1e-2;
/// Multiple of the relative standard error allowed in the residual.
pub const STDERR_MULTIPLE: f64 = 5.0;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityTag {
    KeylemBoundary,
    KeylemDomain,
    SphereTriple,
    BallTriple,
    BallRadial,
    MyFormula,
    MyFormula2,
    Forelli,
    ChangeOfV,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 9] = [
        IdentityTag::KeylemBoundary,
        IdentityTag::KeylemDomain,
        IdentityTag::SphereTriple,
        IdentityTag::BallTriple,
        IdentityTag::BallRadial,
        IdentityTag::MyFormula,
        IdentityTag::MyFormula2,
        IdentityTag::Forelli,
        IdentityTag::ChangeOfV,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityTag::KeylemBoundary => "KEYLEM_BOUNDARY",
            IdentityTag::KeylemDomain => "KEYLEM_DOMAIN",
            IdentityTag::SphereTriple => "SPHERE_TRIPLE",
            IdentityTag::BallTriple => "BALL_TRIPLE",
            IdentityTag::BallRadial => "BALL_RADIAL",
            IdentityTag::MyFormula => "MYFORMULA",
            IdentityTag::MyFormula2 => "MYFORMULA2",
            IdentityTag::Forelli => "FORELLI",
            IdentityTag::ChangeOfV => "CHANGEOFV",
        }
    }

    /// Whether the identity is defined in dimension `n`.
    pub fn supports(&self, n: usize) -> bool {
        !(matches!(self, IdentityTag::Forelli) && n == 0)
    }

    fn salt(&self) -> u64 {
        *self as u64 + 1
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| domain("IdentityTag", format!("unknown identity case {s:?}")))
    }
}

/// One instance of an integral identity: its parameters and evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub enum IdentityCase {
    /// `∫_{b𝒰} dβ(u) / |ρ(z,u)|^{n+1+θ}`.
    KeylemBoundary { z: SiegelPoint, theta: f64 },
    /// `∫_𝒰 height(w)^γ dV(w) / |ρ(z,w)|^{n+2+θ+γ}`.
    KeylemDomain { z: SiegelPoint, theta: f64, gamma: f64 },
    /// `∫_S dσ(ω) / ((1-η·ω̄)^a (1-ζ·ω̄)^b (1-ω·ζ̄)^c)` with `ζ ∈ S`.
    SphereTriple { eta: BallPoint, zeta: BallPoint, a: f64, b: f64, c: f64 },
    /// The same integrand over the ball.
    BallTriple { eta: BallPoint, zeta: BallPoint, a: f64, b: f64, c: f64 },
    /// `∫_B (1-|ξ|²)^γ dV(ξ) / |1-η·ξ̄|^{2θ}`.
    BallRadial { eta: BallPoint, theta: f64, gamma: f64 },
    /// `∫_𝒰 height(w)^γ dV(w) / (|ρ(z,w)|^{2θ} |ρ(w,𝐢)|^{2(n+2+γ-θ)})`.
    MyFormula { z: SiegelPoint, theta: f64, gamma: f64 },
    /// `∫_𝒰 dV(w) / (ρ(z,w)^{n+2} ρ(𝐢,w)^κ ρ(w,𝐢)^{θ-κ})`.
    MyFormula2 { z: SiegelPoint, theta: f64, kappa: f64 },
    /// Slice integration over `b𝒰ⁿ` applied to the `KeylemDomain` integrand on
    /// `𝒰^{n-1}`, lifted through the projection dropping `u_1`.
    Forelli { z: SiegelPoint, theta: f64, gamma: f64 },
    /// A translated Gaussian `exp(-a|v′|² - b s²)` in Heisenberg coordinates
    /// `v = h⁻¹(u) = (v′, s + i|v′|²)`, integrated through the sphere.
    ChangeOfV { n: usize, h: HeisenbergElement, a: f64, b: f64 },
}

impl IdentityCase {
    pub fn tag(&self) -> IdentityTag {
        match self {
            IdentityCase::KeylemBoundary { .. } => IdentityTag::KeylemBoundary,
            IdentityCase::KeylemDomain { .. } => IdentityTag::KeylemDomain,
            IdentityCase::SphereTriple { .. } => IdentityTag::SphereTriple,
            IdentityCase::BallTriple { .. } => IdentityTag::BallTriple,
            IdentityCase::BallRadial { .. } => IdentityTag::BallRadial,
            IdentityCase::MyFormula { .. } => IdentityTag::MyFormula,
            IdentityCase::MyFormula2 { .. } => IdentityTag::MyFormula2,
            IdentityCase::Forelli { .. } => IdentityTag::Forelli,
            IdentityCase::ChangeOfV { .. } => IdentityTag::ChangeOfV,
        }
    }

    /// Dimension `n` of the space integrated over.
    pub fn n(&self) -> usize {
        match self {
            IdentityCase::KeylemBoundary { z, .. }
            | IdentityCase::KeylemDomain { z, .. }
            | IdentityCase::MyFormula { z, .. }
            | IdentityCase::MyFormula2 { z, .. } => z.dim(),
            IdentityCase::Forelli { z, .. } => z.dim() + 1,
            IdentityCase::SphereTriple { eta, .. }
            | IdentityCase::BallTriple { eta, .. }
            | IdentityCase::BallRadial { eta, .. } => eta.dim(),
            IdentityCase::ChangeOfV { n, .. } => *n,
        }
    }

    /// Checks the parameter ranges under which the identity holds.
    pub fn validate(&self) -> Result<()> {
        let nf = self.n() as f64;
        let op = self.tag().as_str();
        let fail = |msg: String| Err(domain(op, msg));
        match self {
            IdentityCase::KeylemBoundary { z, theta } => {
                interior(op, z)?;
                if !(*theta > 0.0) {
                    return fail(format!("requires θ > 0, got {theta}"));
                }
            }
            IdentityCase::KeylemDomain { z, theta, gamma }
            | IdentityCase::MyFormula { z, theta, gamma }
            | IdentityCase::Forelli { z, theta, gamma } => {
                interior(op, z)?;
                if !(*gamma > -1.0) {
                    return fail(format!("requires γ > -1, got {gamma}"));
                }
                if !matches!(self, IdentityCase::MyFormula { .. }) && !(*theta > 0.0) {
                    return fail(format!("requires θ > 0, got {theta}"));
                }
            }
            IdentityCase::SphereTriple { eta, zeta, b, c, .. } | IdentityCase::BallTriple { eta, zeta, b, c, .. } => {
                let limit = if matches!(self, IdentityCase::SphereTriple { .. }) { nf + 1.0 } else { nf + 2.0 };
                if zeta.dim() != eta.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: eta.dim(),
                        found: zeta.dim(),
                    });
                }
                if !(eta.gap() > 0.0) || (zeta.norm_sqr() - 1.0).abs() > 1e-12 {
                    return fail("requires |η| < 1 and |ζ| = 1".into());
                }
                if !(b.max(*c).max(b + c) < limit) {
                    return fail(format!("requires max(b, c, b+c) < {limit}, got b = {b}, c = {c}"));
                }
            }
            IdentityCase::BallRadial { eta, gamma, .. } => {
                if !(eta.gap() > 0.0) {
                    return fail("requires |η| < 1".into());
                }
                if !(*gamma > -1.0) {
                    return fail(format!("requires γ > -1, got {gamma}"));
                }
            }
            IdentityCase::MyFormula2 { z, theta, kappa } => {
                interior(op, z)?;
                if !(*kappa > -nf - 2.0 && *theta > kappa.max(0.0)) {
                    return fail(format!("requires κ > -n-2 and θ > max(κ, 0), got θ = {theta}, κ = {kappa}"));
                }
            }
            IdentityCase::ChangeOfV { n, h, a, b } => {
                if h.dim() != *n {
                    return Err(Error::DimensionMismatch {
                        expected: *n,
                        found: h.dim(),
                    });
                }
                if !(*a > 0.0 && *b > 0.0) {
                    return fail(format!("requires a, b > 0, got a = {a}, b = {b}"));
                }
            }
        }
        Ok(())
    }

    /// Compact `key=value` description of the parameters and point.
    pub fn params(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: f64| {
            if !s.is_empty() {
                s.push(';');
            }
            let _ = write!(s, "{k}={v:.6}");
        };
        match self {
            IdentityCase::KeylemBoundary { theta, .. } => kv("theta", *theta),
            IdentityCase::KeylemDomain { theta, gamma, .. }
            | IdentityCase::MyFormula { theta, gamma, .. }
            | IdentityCase::Forelli { theta, gamma, .. }
            | IdentityCase::BallRadial { theta, gamma, .. } => {
                kv("theta", *theta);
                kv("gamma", *gamma);
            }
            IdentityCase::SphereTriple { a, b, c, .. } | IdentityCase::BallTriple { a, b, c, .. } => {
                kv("a", *a);
                kv("b", *b);
                kv("c", *c);
            }
            IdentityCase::MyFormula2 { theta, kappa, .. } => {
                kv("theta", *theta);
                kv("kappa", *kappa);
            }
            IdentityCase::ChangeOfV { h, a, b, .. } => {
                kv("a", *a);
                kv("b", *b);
                kv("t", h.t);
            }
        }
        let point = match self {
            IdentityCase::KeylemBoundary { z, .. }
            | IdentityCase::KeylemDomain { z, .. }
            | IdentityCase::MyFormula { z, .. }
            | IdentityCase::MyFormula2 { z, .. }
            | IdentityCase::Forelli { z, .. } => Some(("z", z.coords())),
            IdentityCase::SphereTriple { eta, .. }
            | IdentityCase::BallTriple { eta, .. }
            | IdentityCase::BallRadial { eta, .. } => Some(("eta", eta.coords())),
            IdentityCase::ChangeOfV { h, .. } => Some(("zeta", &h.zeta[..])),
        };
        if let Some((name, coords)) = point {
            let _ = write!(s, ";{name}=[");
            for (i, c) in coords.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{:.6}{:+.6}i", c.re, c.im);
            }
            s.push(']');
        }
        s
    }

    /// The right-hand side of the identity.
    pub fn closed(&self) -> Result<Complex64> {
        self.validate()?;
        let n = self.n();
        let nf = n as f64;
        let four_pi = 4.0 * PI.powi(n as i32 + 1);
        let real = |x: f64| Complex64::new(x, 0.0);
        match self {
            IdentityCase::KeylemBoundary { z, theta } => {
                let half = 0.5 * (nf + 1.0 + theta);
                let log = ln_gamma(*theta)? - 2.0 * ln_gamma(half)? - theta * z.height().ln();
                Ok(real(four_pi * log.exp()))
            }
            IdentityCase::KeylemDomain { z, theta, gamma } => {
                let half = 0.5 * (nf + 2.0 + theta + gamma);
                let log = ln_gamma(1.0 + gamma)? + ln_gamma(*theta)? - 2.0 * ln_gamma(half)? - theta * z.height().ln();
                Ok(real(four_pi * log.exp()))
            }
            IdentityCase::SphereTriple { eta, zeta, a, b, c } => {
                let m = nf + 1.0;
                let k = crate::kernels::factorial(n) * gamma_ratio(&[m - b - c], &[m - b, m - c])?;
                let f = hyp2f1(&Hyp2F1Query::new(*a, *c, m - b, eta.dot(zeta)))?;
                Ok(f * k)
            }
            IdentityCase::BallTriple { eta, zeta, a, b, c } => {
                let m = nf + 2.0;
                let k = PI.powi(n as i32 + 1) * gamma_ratio(&[m - b - c], &[m - b, m - c])?;
                let f = hyp2f1(&Hyp2F1Query::new(*a, *c, m - b, eta.dot(zeta)))?;
                Ok(f * k)
            }
            IdentityCase::BallRadial { eta, theta, gamma } => {
                let cc = nf + 2.0 + gamma;
                let k = PI.powi(n as i32 + 1) * gamma_ratio(&[1.0 + gamma], &[cc])?;
                let f = hyp2f1_complement(*theta, *theta, cc, real(eta.gap()))?;
                Ok(f * k)
            }
            IdentityCase::MyFormula { z, theta, gamma } => {
                let cc = nf + 2.0 + gamma;
                let k = four_pi * gamma_ratio(&[1.0 + gamma], &[cc])?;
                let one_minus = z.height() / rho_basepoint(z).norm_sqr();
                let f = hyp2f1_complement(*theta, *theta, cc, real(one_minus))?;
                Ok(f * k * rho_basepoint(z).norm_sqr().powf(-theta))
            }
            IdentityCase::MyFormula2 { z, theta, kappa } => {
                let cc = nf + 2.0 + kappa;
                let k = four_pi * gamma_ratio(&[*theta], &[theta - kappa, cc])?;
                let r = rho_basepoint(z);
                let f = hyp2f1_complement(*theta, *kappa, cc, r.inv())?;
                Ok(f * k * r.powf(-theta))
            }
            IdentityCase::Forelli { z, theta, gamma } => {
                // π times the domain identity in dimension n - 1
                let inner = IdentityCase::KeylemDomain {
                    z: z.clone(),
                    theta: *theta,
                    gamma: *gamma,
                };
                Ok(inner.closed()? * PI)
            }
            IdentityCase::ChangeOfV { n, a, b, .. } => Ok(real((PI / a).powi(*n as i32) * (PI / b).sqrt())),
        }
    }

    /// Monte Carlo estimate of the left-hand side.
    pub fn monte_carlo(&self, run: &McRun) -> Result<MonteCarloEstimate<Complex64>> {
        self.validate()?;
        let n = self.n();
        let nf = n as f64;
        let real = |x: f64| Complex64::new(x, 0.0);
        match self {
            IdentityCase::KeylemBoundary { z, theta } => {
                let e = nf + 1.0 + theta;
                integrate_boundary(n, run, |u| real((-e * rho_unchecked(z, u).norm().ln()).exp()))
            }
            IdentityCase::KeylemDomain { z, theta, gamma } => {
                let e = nf + 2.0 + theta + gamma;
                let kind = SamplerKind::matched(n, *gamma, e);
                integrate_siegel(kind, n, run, |w| {
                    real((gamma * w.height().ln() - e * rho_unchecked(z, w).norm().ln()).exp())
                })
            }
            IdentityCase::SphereTriple { eta, zeta, a, b, c } => integrate_sphere(n, run, |w| triple(eta, zeta, *a, *b, *c, w)),
            IdentityCase::BallTriple { eta, zeta, a, b, c } => integrate_ball(n, run, |w| triple(eta, zeta, *a, *b, *c, w)),
            IdentityCase::BallRadial { eta, theta, gamma } => {
                let kind = SamplerKind::RadialBetaBall { s: -gamma };
                integrate_ball_with(kind, n, run, |xi| {
                    let d = (ONE - eta.dot(xi)).norm_sqr();
                    real((gamma * xi.gap().ln() - theta * d.ln()).exp())
                })
            }
            IdentityCase::MyFormula { z, theta, gamma } => {
                let e = nf + 2.0 + gamma - theta;
                let kind = SamplerKind::RadialBetaBall { s: -gamma };
                integrate_siegel(kind, n, run, |w| {
                    let l = gamma * w.height().ln()
                        - theta * rho_unchecked(z, w).norm_sqr().ln()
                        - e * rho_basepoint(w).norm_sqr().ln();
                    real(l.exp())
                })
            }
            IdentityCase::MyFormula2 { z, theta, kappa } => {
                let m = nf + 2.0;
                integrate_siegel(SamplerKind::UniformBall, n, run, |w| {
                    let r = rho_basepoint(w);
                    let l = -m * rho_unchecked(z, w).ln() - kappa * r.conj().ln() - (theta - kappa) * r.ln();
                    l.exp()
                })
            }
            IdentityCase::Forelli { z, theta, gamma } => {
                let e = nf + 1.0 + theta + gamma;
                integrate_boundary(n, run, |u| {
                    let h = u.coords()[0].norm_sqr();
                    let w = SiegelPoint::with_height(Coords::from_slice(&u.coords()[1..]), h);
                    real((gamma * h.ln() - e * rho_unchecked(z, &w).norm().ln()).exp())
                })
            }
            IdentityCase::ChangeOfV { h, a, b, .. } => {
                let inv = heis_inverse(h);
                integrate_boundary(n, run, |u| match heis_apply(&inv, u) {
                    Ok(v) => {
                        let s = v.last().re;
                        real((-a * v.z_prime().iter().map(|c| c.norm_sqr()).sum::<f64>() - b * s * s).exp())
                    }
                    Err(_) => real(f64::NAN),
                })
            }
        }
    }

    /// A random instance of `tag` in dimension `n` inside the parameter
    /// ranges where the Monte Carlo estimator has finite variance.
    pub fn draw<R: Rng + ?Sized>(tag: IdentityTag, n: usize, rng: &mut R) -> Result<Self> {
        if !tag.supports(n) {
            return Err(domain(tag.as_str(), format!("not defined for n = {n}")));
        }
        let nf = n as f64;
        let mut uni = |lo: f64, hi: f64| lo + (hi - lo) * rng.random::<f64>();
        let case = match tag {
            IdentityTag::KeylemBoundary => {
                let theta = uni(0.5 * (nf + 1.0) + 0.1, 0.5 * (nf + 1.0) + 2.0);
                IdentityCase::KeylemBoundary {
                    z: interior_point(rng, n)?,
                    theta,
                }
            }
            IdentityTag::KeylemDomain => {
                let theta = uni(0.3, 2.5);
                let gamma = uni(-0.8, 1.5);
                IdentityCase::KeylemDomain {
                    z: interior_point(rng, n)?,
                    theta,
                    gamma,
                }
            }
            IdentityTag::SphereTriple | IdentityTag::BallTriple => {
                let limit = if tag == IdentityTag::SphereTriple { nf + 1.0 } else { nf + 2.0 };
                let a = uni(-2.0, 2.0);
                let (b, c) = loop {
                    let b = uni(-1.0, 0.5 * limit);
                    let c = uni(-1.0, 0.5 * limit);
                    if 2.0 * (b + c) < 0.9 * limit {
                        break (b, c);
                    }
                };
                let eta = ball_point(rng, n, 0.6);
                let zeta = sphere_point(rng, n);
                if tag == IdentityTag::SphereTriple {
                    IdentityCase::SphereTriple { eta, zeta, a, b, c }
                } else {
                    IdentityCase::BallTriple { eta, zeta, a, b, c }
                }
            }
            IdentityTag::BallRadial => {
                let theta = uni(-1.0, 3.0);
                let gamma = uni(-0.8, 1.5);
                IdentityCase::BallRadial {
                    eta: ball_point(rng, n, 0.6),
                    theta,
                    gamma,
                }
            }
            IdentityTag::MyFormula => {
                let theta = uni(-1.0, 3.0);
                let gamma = uni(-0.8, 1.5);
                IdentityCase::MyFormula {
                    z: interior_point(rng, n)?,
                    theta,
                    gamma,
                }
            }
            IdentityTag::MyFormula2 => {
                let theta = uni(nf + 2.0, nf + 3.5);
                let kappa = uni(-1.0, theta - 0.3);
                IdentityCase::MyFormula2 {
                    z: interior_point(rng, n)?,
                    theta,
                    kappa,
                }
            }
            IdentityTag::Forelli => {
                let theta = uni(0.5 * (nf + 1.0) + 0.1, 0.5 * (nf + 1.0) + 2.0);
                let gamma = uni(0.0, 1.0);
                IdentityCase::Forelli {
                    z: interior_point(rng, n - 1)?,
                    theta,
                    gamma,
                }
            }
            IdentityTag::ChangeOfV => {
                let a = uni(0.5, 2.0);
                let b = uni(0.5, 2.0);
                let t = uni(-1.0, 1.0);
                let zeta: Coords = (0..n)
                    .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                    .collect();
                IdentityCase::ChangeOfV {
                    n,
                    h: HeisenbergElement::new(zeta, t),
                    a,
                    b,
                }
            }
        };
        case.validate()?;
        Ok(case)
    }

    /// Seed salt identifying `(tag, n, draw)` within a suite.
    pub fn suite_salt(tag: IdentityTag, n: usize, draw: usize) -> u64 {
        (tag.salt() << 32) | ((n as u64) << 16) | draw as u64
    }

    /// Draw number `draw` of `tag` in dimension `n` for the suite seeded by
    /// `run`, with the run its Monte Carlo side should use.
    pub fn suite_case(tag: IdentityTag, n: usize, draw: usize, run: &McRun) -> Result<(Self, McRun)> {
        let salt = Self::suite_salt(tag, n, draw);
        let mut rng = ChaCha8Rng::seed_from_u64(run.reseeded(salt).seed);
        let case = Self::draw(tag, n, &mut rng)?;
        Ok((case, run.reseeded(salt ^ 0xD1CE)))
    }
}

fn interior(op: &'static str, z: &SiegelPoint) -> Result<()> {
    if z.height() > 0.0 {
        Ok(())
    } else {
        Err(domain(op, "the evaluation point must be interior"))
    }
}

fn triple(eta: &BallPoint, zeta: &BallPoint, a: f64, b: f64, c: f64, w: &BallPoint) -> Complex64 {
    let x = ONE - eta.dot(w);
    let y = ONE - zeta.dot(w);
    (-a * x.ln() - b * y.ln() - c * y.conj().ln()).exp()
}

fn gaussian_coords<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Coords {
    (0..=n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

fn sphere_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BallPoint {
    let v = gaussian_coords(rng, n);
    let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    BallPoint::with_gap(v.into_iter().map(|c| c / norm).collect::<Coords>(), 0.0)
}

/// Uniform in the ball of radius `radius`.
fn ball_point<R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> BallPoint {
    let dir = sphere_point(rng, n);
    let r = radius * rng.random::<f64>().powf(1.0 / (2.0 * n as f64 + 2.0));
    BallPoint::new(dir.coords().iter().map(|c| c * r).collect::<Coords>())
}

fn interior_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<SiegelPoint> {
    cayley_phi(&ball_point(rng, n, 0.6))
}

/// The outcome of [`verify_identity`].
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub case: IdentityCase,
    pub closed: Complex64,
    pub mc: MonteCarloEstimate<Complex64>,
    /// `|mc - closed| / |closed|`.
    pub residual: f64,
    /// `stderr / |closed|`.
    pub stderr_residual: f64,
    pub pass: bool,
}

impl IdentityReport {
    /// Tolerance `max(5·stderr/|closed|, floor)`.
    pub fn tolerance(&self, floor: f64) -> f64 {
        (STDERR_MULTIPLE * self.stderr_residual).max(floor)
    }

    pub fn passes(&self, floor: f64) -> bool {
        self.residual <= self.tolerance(floor)
    }
}

/// Compares the closed form of `case` with its Monte Carlo estimate.
pub fn verify_identity(case: &IdentityCase, run: &McRun) -> Result<IdentityReport> {
    let closed = case.closed()?;
    let mc = case.monte_carlo(run)?;
    let scale = closed.norm().max(1e-300);
    let residual = (mc.value - closed).norm() / scale;
    let stderr_residual = mc.stderr / scale;
    let mut report = IdentityReport {
        case: case.clone(),
        closed,
        mc,
        residual,
        stderr_residual,
        pass: false,
    };
    report.pass = report.passes(RESIDUAL_FLOOR);
    Ok(report)
}
