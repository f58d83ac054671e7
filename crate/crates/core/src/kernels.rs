//! Kernels of the Bergman, Cauchy–Szegő, `T_α` and Berezin operators on `𝒰ⁿ`,
//! together with the extremal test functions and the closed forms of the
//! operators applied to them.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::siegel::{rho, rho_basepoint, SiegelPoint};
use crate::specfun::{gamma_ratio, gauss_value, hyp2f1_complement, ln_gamma};

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// The Bergman normalising constant `(n+1)! / (4π^{n+1})`.
pub fn bergman_constant(n: usize) -> f64 {
    factorial(n + 1) / (4.0 * PI.powi(n as i32 + 1))
}

/// The Cauchy–Szegő normalising constant `n! / (4π^{n+1})`.
pub fn szego_constant(n: usize) -> f64 {
    factorial(n) / (4.0 * PI.powi(n as i32 + 1))
}

fn require_positive_real_part(op: &'static str, base: Complex64) -> Result<()> {
    if base.re > 0.0 {
        Ok(())
    } else {
        Err(domain(op, format!("base {base} has non-positive real part")))
    }
}

/// `K(z, w) = (n+1)!/(4π^{n+1}) ρ(z, w)^{-n-2}`.
pub fn bergman_kernel(z: &SiegelPoint, w: &SiegelPoint) -> Result<Complex64> {
    let r = rho(z, w)?;
    Ok(r.powi(-(z.dim() as i32) - 2) * bergman_constant(z.dim()))
}

/// `S(z, u) = n!/(4π^{n+1}) ρ(z, u)^{-n-1}`, for `u` on the boundary.
pub fn szego_kernel(z: &SiegelPoint, u: &SiegelPoint) -> Result<Complex64> {
    let r = rho(z, u)?;
    Ok(r.powi(-(z.dim() as i32) - 1) * szego_constant(z.dim()))
}

/// Which test family drives a lower bound for `‖T_α‖_{p→p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiCase {
    /// `(n+2+α)p > n+3`: `ψ_t` with exponent `β`, tested against `T_α` in `L^p`.
    Direct,
    /// `(n+2+α)p ≤ n+3`: `ψ̃_t` with exponent `β̃`, tested against `T_α*` in `L^q`.
    Adjoint,
}

/// Parameters `(n, α, p)` of the operator `T_α` acting on `L^p(𝒰ⁿ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TAlphaParams {
    pub n: usize,
    pub alpha: f64,
    pub p: f64,
    /// Conjugate exponent `p/(p-1)`; infinite at `p = 1`.
    pub q: f64,
    /// `(n+2+α)/2`
    pub beta: f64,
    /// `(n+2-α)/2`
    pub beta_tilde: f64,
}

impl TAlphaParams {
    pub fn new(n: usize, alpha: f64, p: f64) -> Result<Self> {
        if !(alpha > -1.0 && alpha.is_finite()) {
            return Err(domain("TAlphaParams", format!("alpha must exceed -1, got {alpha}")));
        }
        if !(p >= 1.0) {
            return Err(domain("TAlphaParams", format!("p must be at least 1, got {p}")));
        }
        let nf = n as f64;
        Ok(Self {
            n,
            alpha,
            p,
            q: conjugate(p),
            beta: 0.5 * (nf + 2.0 + alpha),
            beta_tilde: 0.5 * (nf + 2.0 - alpha),
        })
    }

    /// `p(1+α) > 1`, the range in which `T_α` is bounded on `L^p`.
    pub fn is_bounded(&self) -> bool {
        self.p.is_finite() && self.p * (1.0 + self.alpha) > 1.0
    }

    pub fn case(&self) -> PsiCase {
        if (self.n as f64 + 2.0 + self.alpha) * self.p > self.n as f64 + 3.0 {
            PsiCase::Direct
        } else {
            PsiCase::Adjoint
        }
    }

    /// Open interval of admissible `t` for the given test family.
    pub fn t_range(&self, case: PsiCase) -> (f64, f64) {
        match case {
            PsiCase::Direct => (0.0, 1.0 / self.p),
            PsiCase::Adjoint => ((-self.alpha).max(0.0), 1.0 / self.q),
        }
    }

    fn exponent(&self, case: PsiCase) -> f64 {
        match case {
            PsiCase::Direct => self.beta,
            PsiCase::Adjoint => self.beta_tilde,
        }
    }

    /// The Lebesgue exponent the test function is measured in.
    pub fn test_exponent(&self, case: PsiCase) -> f64 {
        match case {
            PsiCase::Direct => self.p,
            PsiCase::Adjoint => self.q,
        }
    }

    fn check_t(&self, case: PsiCase, t: f64) -> Result<()> {
        let (lo, hi) = self.t_range(case);
        if t > lo && t < hi {
            Ok(())
        } else {
            Err(domain("psi_t", format!("t = {t} outside ({lo}, {hi})")))
        }
    }
}

/// `p/(p-1)`, with `1 ↦ ∞` and `∞ ↦ 1`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `(n+1)!/(4π^{n+1}) · height(w)^α / |ρ(z, w)|^{n+2+α}`.
pub fn t_alpha_kernel(params: &TAlphaParams, z: &SiegelPoint, w: &SiegelPoint) -> Result<f64> {
    if z.dim() != params.n {
        return Err(Error::DimensionMismatch {
            expected: params.n,
            found: z.dim(),
        });
    }
    let r = rho(z, w)?.norm();
    let s = params.n as f64 + 2.0 + params.alpha;
    Ok(bergman_constant(params.n) * (params.alpha * w.height().ln() - s * r.ln()).exp())
}

/// `(n+1)!/(4π^{n+1}) · height(z)^{n+2} / |ρ(z, w)|^{2(n+2)}`.
pub fn berezin_kernel(z: &SiegelPoint, w: &SiegelPoint) -> Result<f64> {
    let r = rho(z, w)?.norm();
    let k = z.dim() as i32 + 2;
    Ok(bergman_constant(z.dim()) * (z.height() / (r * r)).powi(k))
}

/// `ψ_t(w) = height(w)^{-t} / |ρ(w, 𝐢)|^{2(b - t)}` with `b = β` in the
/// direct case and `b = β̃` in the adjoint case.
pub fn psi_t(params: &TAlphaParams, case: PsiCase, t: f64, w: &SiegelPoint) -> Result<f64> {
    params.check_t(case, t)?;
    dim_check(params.n, w)?;
    let b = params.exponent(case);
    let r2 = rho_basepoint(w).norm_sqr();
    Ok((-t * w.height().ln() - (b - t) * r2.ln()).exp())
}

fn dim_check(n: usize, z: &SiegelPoint) -> Result<()> {
    if z.dim() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            found: z.dim(),
        })
    }
}

/// `1 - λ(z) = height(z) / |ρ(𝐢, z)|²`, where `λ(z) = |Ψ(z)|²`.
pub fn lambda_complement(z: &SiegelPoint) -> f64 {
    z.height() / rho_basepoint(z).norm_sqr()
}

/// The prefactor multiplying `H · ψ` in the closed form of the operator
/// applied to the test function:
/// `(n+1)! Γ(2β-t-n-1) Γ(t) / Γ²(β)` (direct) or
/// `(n+1)! Γ(α+t) Γ(1-t) / Γ²(β)` (adjoint).
pub fn extremal_coefficient(params: &TAlphaParams, case: PsiCase, t: f64) -> Result<f64> {
    params.check_t(case, t)?;
    let nf = params.n as f64;
    let b = params.beta;
    let g = match case {
        PsiCase::Direct => gamma_ratio(&[2.0 * b - t - nf - 1.0, t], &[b, b])?,
        PsiCase::Adjoint => gamma_ratio(&[params.alpha + t, 1.0 - t], &[b, b])?,
    };
    Ok(factorial(params.n + 1) * g)
}

/// The normalised hypergeometric factor `H(t, λ)` with `H(t, 1) = 1`, given
/// `1 - λ`.
pub fn h_factor(params: &TAlphaParams, case: PsiCase, t: f64, one_minus_lambda: f64) -> Result<f64> {
    params.check_t(case, t)?;
    let nf = params.n as f64;
    let (a, c) = match case {
        PsiCase::Direct => (params.beta - t, 2.0 * params.beta - t),
        PsiCase::Adjoint => (params.beta_tilde - t, nf + 2.0 - t),
    };
    let f = hyp2f1_complement(a, a, c, Complex64::new(one_minus_lambda, 0.0))?.re;
    Ok(f / gauss_value(a, a, c)?)
}

/// Closed form of `(T_α ψ_t)(z)` in the direct case.
pub fn closed_t_psi(params: &TAlphaParams, t: f64, z: &SiegelPoint) -> Result<f64> {
    if params.case() != PsiCase::Direct {
        return Err(domain(
            "closed_t_psi",
            "requires (n+2+α)p > n+3; use closed_t_adjoint_psi",
        ));
    }
    closed_operator_psi(params, PsiCase::Direct, t, z)
}

/// Closed form of `(T_α* ψ̃_t)(z)`.
pub fn closed_t_adjoint_psi(params: &TAlphaParams, t: f64, z: &SiegelPoint) -> Result<f64> {
    closed_operator_psi(params, PsiCase::Adjoint, t, z)
}

/// `coef · H(t, λ(z)) · ψ(z)` for either test family.
pub fn closed_operator_psi(params: &TAlphaParams, case: PsiCase, t: f64, z: &SiegelPoint) -> Result<f64> {
    let coef = extremal_coefficient(params, case, t)?;
    let h = h_factor(params, case, t, lambda_complement(z))?;
    Ok(coef * h * psi_t(params, case, t, z)?)
}

/// `‖ψ_t‖_p^p` (direct) or `‖ψ̃_t‖_q^q` (adjoint):
/// `4π^{n+1} Γ(1-tr) Γ((2b-t)r-n-2) / Γ²((b-t)r)` with `r` the test exponent.
pub fn closed_psi_norm(params: &TAlphaParams, case: PsiCase, t: f64) -> Result<f64> {
    params.check_t(case, t)?;
    let r = params.test_exponent(case);
    let b = params.exponent(case);
    let nf = params.n as f64;
    let x1 = 1.0 - t * r;
    let x2 = (2.0 * b - t) * r - nf - 2.0;
    let x3 = (b - t) * r;
    if !(x1 > 0.0 && x2 > 0.0 && x3 > 0.0) {
        return Err(domain(
            "closed_psi_norm",
            format!("test function is not integrable (Γ arguments {x1}, {x2}, {x3})"),
        ));
    }
    let log = ln_gamma(x1)? + ln_gamma(x2)? - 2.0 * ln_gamma(x3)?;
    Ok(4.0 * PI.powi(params.n as i32 + 1) * log.exp())
}

/// Parameters `(n, p, ε)` of the test functions `f_ε, g_ε, h_ε` for the
/// Bergman projection, with `κ = (n+2)(1/2 - 1/p)` and `θ = (n+2)/p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanTestParams {
    pub n: usize,
    pub p: f64,
    pub epsilon: f64,
    pub kappa: f64,
    pub theta: f64,
}

impl BergmanTestParams {
    pub fn new(n: usize, p: f64, epsilon: f64) -> Result<Self> {
        if !(p > 2.0 && p.is_finite()) {
            return Err(domain(
                "BergmanTestParams",
                format!("requires 2 < p < ∞, got {p}"),
            ));
        }
        let nf = n as f64;
        let kappa = (nf + 2.0) * (0.5 - 1.0 / p);
        let theta = (nf + 2.0) / p;
        if !(epsilon > 0.0 && epsilon < kappa) {
            return Err(domain(
                "BergmanTestParams",
                format!("requires 0 < ε < κ = {kappa}, got {epsilon}"),
            ));
        }
        Ok(Self {
            n,
            p,
            epsilon,
            kappa,
            theta,
        })
    }

    /// Hypergeometric parameters `(ε-κ, θ+ε, n+2+ε-κ)` of `P f_ε`.
    pub fn hyp_params(&self) -> (f64, f64, f64) {
        let e = self.epsilon;
        (e - self.kappa, self.theta + e, self.n as f64 + 2.0 + e - self.kappa)
    }

    /// `(n+1)! Γ(θ+ε) / (Γ(θ+κ) Γ(n+2+ε-κ))`.
    pub fn projection_coefficient(&self) -> Result<f64> {
        let (_, b, c) = self.hyp_params();
        Ok(factorial(self.n + 1) * gamma_ratio(&[b], &[self.theta + self.kappa, c])?)
    }

    /// `‖g_ε‖_p / ‖f_ε‖_p = Γ(θ+ε)Γ(n+2-θ-ε) / (Γ(θ+κ)Γ(n+2-κ-θ))`.
    pub fn ratio_g(&self) -> Result<f64> {
        let nf = self.n as f64;
        let (t, k, e) = (self.theta, self.kappa, self.epsilon);
        gamma_ratio(&[t + e, nf + 2.0 - t - e], &[t + k, nf + 2.0 - k - t])
    }

    /// `‖f_ε‖_p^p = 4π^{n+1} Γ(pε) / Γ²((n+2+pε)/2)`.
    pub fn f_norm_p(&self) -> Result<f64> {
        let pe = self.p * self.epsilon;
        let log = ln_gamma(pe)? - 2.0 * ln_gamma(0.5 * (self.n as f64 + 2.0 + pe))?;
        Ok(4.0 * PI.powi(self.n as i32 + 1) * log.exp())
    }

    /// Constant `C(ε)` in `|h_ε(z)| ≤ C(ε) |ρ(z, 𝐢)|^{-θ-1-ε}`.
    pub fn h_bound_constant(&self) -> Result<f64> {
        let nf = self.n as f64;
        let (t, k, e) = (self.theta, self.kappa, self.epsilon);
        let lead = (e - k).abs() * gamma_ratio(&[t + e], &[t + k])?;
        let first = 2f64.powf(k - e - 1.0) * factorial(self.n + 1) * gamma_ratio(&[], &[nf + 2.0 + e - k])?;
        let second = (nf + 1.0) * gamma_ratio(&[nf + 1.0 - t - e], &[nf + 2.0 - k - t])?;
        Ok(lead * first.max(second))
    }
}

/// `f_ε(z) = ρ(𝐢, z)^{κ-ε} ρ(z, 𝐢)^{-θ-κ}`.
pub fn f_eps(params: &BergmanTestParams, z: &SiegelPoint) -> Result<Complex64> {
    dim_check(params.n, z)?;
    let r = rho_basepoint(z);
    require_positive_real_part("f_eps", r)?;
    Ok(r.conj().powf(params.kappa - params.epsilon) * r.powf(-params.theta - params.kappa))
}

/// `g_ε(z) = ratio_g · ρ(z, 𝐢)^{-θ-ε}`.
pub fn g_eps(params: &BergmanTestParams, z: &SiegelPoint) -> Result<Complex64> {
    dim_check(params.n, z)?;
    let r = rho_basepoint(z);
    require_positive_real_part("g_eps", r)?;
    Ok(r.powf(-params.theta - params.epsilon) * params.ratio_g()?)
}

/// Closed form of `(P f_ε)(z)`:
/// `coef · ₂F₁(ε-κ, θ+ε; n+2+ε-κ; 1 - 1/ρ(z, 𝐢)) · ρ(z, 𝐢)^{-θ-ε}`.
pub fn closed_p_f_eps(params: &BergmanTestParams, z: &SiegelPoint) -> Result<Complex64> {
    dim_check(params.n, z)?;
    let r = rho_basepoint(z);
    require_positive_real_part("closed_p_f_eps", r)?;
    let (a, b, c) = params.hyp_params();
    let f = hyp2f1_complement(a, b, c, r.inv())?;
    Ok(f * r.powf(-params.theta - params.epsilon) * params.projection_coefficient()?)
}

/// `h_ε = P f_ε - g_ε`.
pub fn h_eps(params: &BergmanTestParams, z: &SiegelPoint) -> Result<Complex64> {
    Ok(closed_p_f_eps(params, z)? - g_eps(params, z)?)
}
