//! Rayleigh-quotient lower bounds for `‖T_α‖` and for the Bergman projection.

use crate::error::{domain, Error, Result};
use crate::kernels::{
    closed_psi_norm, extremal_coefficient, h_eps, h_factor, BergmanTestParams, PsiCase, TAlphaParams,
};
use crate::mcquad::{integrate_siegel, mean_of, McRun, MonteCarloEstimate, SamplerKind, SamplerSpec};
use crate::specfun::ln_gamma;

/// Distances to the limit, as fractions of the admissible interval, used by
/// the default `t` sweep.
pub const DEFAULT_T_FRACTIONS: [f64; 4] = [0.5, 0.25, 0.1, 0.02];
/// Default `ε` sweep as fractions of `κ`.
pub const DEFAULT_EPS_FRACTIONS: [f64; 4] = [0.5, 0.25, 0.1, 0.02];

/// The default `t` sweep for `case`, increasing toward the upper end of the
/// admissible interval.
pub fn default_t_grid(params: &TAlphaParams, case: PsiCase) -> Vec<f64> {
    let (lo, hi) = params.t_range(case);
    DEFAULT_T_FRACTIONS.iter().map(|f| hi - (hi - lo) * f).collect()
}

/// `‖T_α ψ_t‖_p / ‖ψ_t‖_p` with the test family chosen by [`TAlphaParams::case`].
pub fn rayleigh_lower_t(params: &TAlphaParams, t: f64, run: &McRun) -> Result<MonteCarloEstimate<f64>> {
    rayleigh_lower_t_case(params, params.case(), t, run)
}

/// The Rayleigh quotient for an explicit test family. In the adjoint case
/// this is `‖T_α* ψ̃_t‖_q / ‖ψ̃_t‖_q`, which bounds `‖T_α‖_{p→p}` by duality.
///
/// The points are drawn from the law proportional to `|ψ_t|^r`, so the
/// quotient reduces to `coef · E[H(t, λ)^r]^{1/r}`.
pub fn rayleigh_lower_t_case(
    params: &TAlphaParams,
    case: PsiCase,
    t: f64,
    run: &McRun,
) -> Result<MonteCarloEstimate<f64>> {
    if !params.is_bounded() {
        return Err(Error::Dispatch(format!(
            "T_α is bounded on L^p only when p(1+α) > 1; got p(1+α) = {}",
            params.p * (1.0 + params.alpha)
        )));
    }
    let (lo, hi) = params.t_range(case);
    if !(t > lo && t < hi) {
        let which = match case {
            PsiCase::Direct => "direct",
            PsiCase::Adjoint => "adjoint",
        };
        return Err(Error::Dispatch(format!("t = {t} outside the {which} range ({lo}, {hi})")));
    }
    // integrability of the test function
    closed_psi_norm(params, case, t)?;
    let r = params.test_exponent(case);
    let b = match case {
        PsiCase::Direct => params.beta,
        PsiCase::Adjoint => params.beta_tilde,
    };
    let nf = params.n as f64;
    let kind = SamplerKind::TiltedBall {
        s: t * r,
        k: nf + 2.0 - b * r,
    };
    let spec = SamplerSpec::new(kind, params.n, run.seed)?;
    let coef = extremal_coefficient(params, case, t)?;
    let m = mean_of(run, |i| {
        let xi = spec.sample(i)?;
        Ok(h_factor(params, case, t, xi.gap().max(f64::MIN_POSITIVE))?.powf(r))
    })?;
    let root = m.value.powf(1.0 / r);
    Ok(MonteCarloEstimate {
        value: coef * root,
        stderr: coef * root / (r * m.value) * m.stderr,
        samples: m.samples,
        seed: m.seed,
    })
}

/// Output of [`rayleigh_lower_bergman`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BergmanRayleigh {
    pub epsilon: f64,
    /// `‖g_ε‖_p / ‖f_ε‖_p`, exact.
    pub ratio_g: f64,
    /// `‖h_ε‖_p / ‖f_ε‖_p`.
    pub ratio_h: MonteCarloEstimate<f64>,
    /// `‖h_ε‖_p^p`.
    pub h_norm_p: MonteCarloEstimate<f64>,
    /// Upper bound `C(ε)^p ∫ |ρ(z, 𝐢)|^{-p(θ+1+ε)} dV(z)` for `‖h_ε‖_p^p`.
    pub h_norm_p_bound: f64,
    /// `ratio_g - ratio_h`.
    pub net_lower: f64,
}

/// Lower bound `‖P f_ε‖_p / ‖f_ε‖_p ≥ ratio_g - ratio_h` for the Bergman
/// projection, with `‖h_ε‖_p` estimated under uniform ball samples.
pub fn rayleigh_lower_bergman(params: &BergmanTestParams, run: &McRun) -> Result<BergmanRayleigh> {
    let p = params.p;
    let n = params.n;
    let ratio_g = params.ratio_g()?;
    let f_norm = params.f_norm_p()?.powf(1.0 / p);
    let h_norm_p = integrate_siegel(SamplerKind::UniformBall, n, run, |z| {
        h_eps(params, z).map(|v| v.norm().powf(p)).unwrap_or(f64::NAN)
    })?;
    if !(h_norm_p.value > 0.0) {
        return Err(domain("rayleigh_lower_bergman", "estimate of ‖h_ε‖_p^p is not positive"));
    }
    let root = h_norm_p.value.powf(1.0 / p);
    let ratio_h = MonteCarloEstimate {
        value: root / f_norm,
        stderr: root / (p * h_norm_p.value) * h_norm_p.stderr / f_norm,
        samples: h_norm_p.samples,
        seed: h_norm_p.seed,
    };
    let e = p * (1.0 + params.epsilon);
    let log = ln_gamma(e)? - 2.0 * ln_gamma(0.5 * (n as f64 + 2.0 + e))?;
    let h_norm_p_bound = params.h_bound_constant()?.powf(p) * 4.0 * std::f64::consts::PI.powi(n as i32 + 1) * log.exp();
    Ok(BergmanRayleigh {
        epsilon: params.epsilon,
        ratio_g,
        ratio_h,
        h_norm_p,
        h_norm_p_bound,
        net_lower: ratio_g - ratio_h.value,
    })
}
