//! Monte Carlo quadrature over `𝒰ⁿ`, its boundary, the unit ball and the unit
//! sphere.
//!
//! Every domain integral is pulled back to the ball by the Cayley transform.
//! Sample `i` is a pure function of `(seed, i)`: each index gets its own
//! ChaCha stream. Samples are reduced in fixed-size chunks whose partial
//! moments are merged in index order, so an estimate does not depend on the
//! number of worker threads.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal, StudentT};
use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::kernels::{factorial, szego_kernel, t_alpha_kernel, TAlphaParams};
use crate::siegel::{
    cayley_phi, cayley_psi, jac_phi, BallPoint, Coords, SiegelPoint, SOUTH_POLE_GUARD,
};
use crate::specfun::ln_gamma;

/// Number of consecutive indices reduced by one task.
pub const CHUNK: u64 = 4096;
const MAX_REDRAWS: usize = 1000;

/// Distribution of the sample points on the ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplerKind {
    /// Uniform on the ball.
    UniformBall,
    /// Uniform on the unit sphere (normalised surface measure).
    UniformSphere,
    /// Density proportional to `(1 - |ξ|²)^{-s}`, i.e. `|ξ|² ~ Beta(n+1, 1-s)`.
    RadialBetaBall { s: f64 },
    /// Density proportional to `(1 - |ξ|²)^{-s} |1 + ξ_{n+1}|^{-2k}`.
    ///
    /// Pushed forward to `𝒰ⁿ` this is `height^{-s} |ρ(w, 𝐢)|^{-2(n+2-s-k)}`,
    /// which matches integrands that decay at infinity.
    TiltedBall { s: f64, k: f64 },
}

impl SamplerKind {
    /// The tilted sampler with density `∝ height^γ |ρ(w, 𝐢)|^{-decay}` on
    /// `𝒰ⁿ`. For integrands `height^γ |ρ(z, w)|^{-decay}` the importance
    /// weights are then bounded above and below.
    pub fn matched(n: usize, gamma: f64, decay: f64) -> Self {
        let k = n as f64 + 2.0 + gamma - 0.5 * decay;
        SamplerKind::TiltedBall { s: -gamma, k }
    }
}

/// A sampler: distribution, dimension and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerSpec {
    pub kind: SamplerKind,
    pub n: usize,
    pub seed: u64,
}

/// Sample size, seed and worker count of one Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McRun {
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; `0` uses the global pool.
    pub workers: usize,
}

impl McRun {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    /// The same run with a seed derived from `self.seed` and `salt`.
    pub fn reseeded(&self, salt: u64) -> Self {
        let mut z = self.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        // splitmix64 finaliser
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Self { seed: z, ..*self }
    }
}

/// Value, standard error, sample count and seed of a Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate<V> {
    pub value: V,
    /// For complex values, the root of the summed variances of both parts.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl<V: McValue> MonteCarloEstimate<V> {
    /// `|value - target| / stderr`, with the standard error floored at the
    /// rounding level of `target`.
    pub fn z_score(&self, target: V) -> f64 {
        let d = self.value.sub_abs(target);
        let [a, b] = target.parts();
        let floor = 64.0 * f64::EPSILON * a.hypot(b);
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr.max(floor)
        }
    }
}

impl MonteCarloEstimate<f64> {
    pub fn scale(self, c: f64) -> Self {
        Self {
            value: self.value * c,
            stderr: self.stderr * c.abs(),
            ..self
        }
    }
}

/// Scalars that can be averaged: `f64` and `Complex64`.
pub trait McValue: Copy + Send + Sync + 'static {
    fn parts(self) -> [f64; 2];
    fn from_parts(parts: [f64; 2]) -> Self;
    fn sub_abs(self, other: Self) -> f64;
}

impl McValue for f64 {
    fn parts(self) -> [f64; 2] {
        [self, 0.0]
    }
    fn from_parts(parts: [f64; 2]) -> Self {
        parts[0]
    }
    fn sub_abs(self, other: Self) -> f64 {
        (self - other).abs()
    }
}

impl McValue for Complex64 {
    fn parts(self) -> [f64; 2] {
        [self.re, self.im]
    }
    fn from_parts(parts: [f64; 2]) -> Self {
        Complex64::new(parts[0], parts[1])
    }
    fn sub_abs(self, other: Self) -> f64 {
        (self - other).norm()
    }
}

/// Running count, mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    n: u64,
    mean: [f64; 2],
    m2: [f64; 2],
}

impl Moments {
    fn push(&mut self, x: [f64; 2]) {
        self.n += 1;
        let nf = self.n as f64;
        for j in 0..2 {
            let d = x[j] - self.mean[j];
            self.mean[j] += d / nf;
            self.m2[j] += d * (x[j] - self.mean[j]);
        }
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0 {
            return other;
        }
        if other.n == 0 {
            return self;
        }
        let n = self.n + other.n;
        let (na, nb, nf) = (self.n as f64, other.n as f64, n as f64);
        let mut out = Moments {
            n,
            ..Default::default()
        };
        for j in 0..2 {
            let d = other.mean[j] - self.mean[j];
            out.mean[j] = self.mean[j] + d * nb / nf;
            out.m2[j] = self.m2[j] + other.m2[j] + d * d * na * nb / nf;
        }
        out
    }
}

/// Averages `summand(i)` over `i in 0..run.samples`.
pub fn mean_of<V, F>(run: &McRun, summand: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(u64) -> Result<V> + Sync,
{
    if run.samples < 2 {
        return Err(Error::Sampler("at least two samples are required".into()));
    }
    let chunks = run.samples.div_ceil(CHUNK);
    let work = || -> Result<Vec<Moments>> {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut m = Moments::default();
                let end = ((c + 1) * CHUNK).min(run.samples);
                for i in c * CHUNK..end {
                    m.push(summand(i)?.parts());
                }
                Ok(m)
            })
            .collect()
    };
    let parts = if run.workers == 0 {
        work()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(run.workers)
            .build()
            .map_err(|e| Error::Sampler(format!("cannot build worker pool: {e}")))?
            .install(work)?
    };
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let nf = total.n as f64;
    let var = (total.m2[0] + total.m2[1]) / (nf - 1.0);
    Ok(MonteCarloEstimate {
        value: V::from_parts(total.mean),
        stderr: (var / nf).sqrt(),
        samples: total.n,
        seed: run.seed,
    })
}

fn non_finite<V: McValue>(index: u64, v: V, xi: &BallPoint) -> Result<V> {
    let [a, b] = v.parts();
    if a.is_finite() && b.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite {
            index,
            point: format!("{:?}", xi.coords()),
        })
    }
}

/// `ln G` for `G ~ Gamma(a, 1)`, accurate even when `G` underflows.
fn ln_gamma_variate<R: Rng>(rng: &mut R, a: f64) -> f64 {
    if a >= 1.0 {
        let g: f64 = Gamma::new(a, 1.0).expect("shape checked").sample(rng);
        g.ln()
    } else {
        // G_a = G_{a+1} U^{1/a}
        let g: f64 = Gamma::new(a + 1.0, 1.0).expect("shape checked").sample(rng);
        let u: f64 = 1.0 - rng.random::<f64>();
        g.ln() + u.ln() / a
    }
}

/// `(x, 1 - x)` for `x ~ Beta(a, b)`, both computed without cancellation.
fn beta_pair<R: Rng>(rng: &mut R, a: f64, b: f64) -> (f64, f64) {
    let la = ln_gamma_variate(rng, a);
    let lb = ln_gamma_variate(rng, b);
    let d = la - lb;
    // x = 1/(1 + e^{-d}), 1 - x = 1/(1 + e^{d})
    (1.0 / (1.0 + (-d).exp()), 1.0 / (1.0 + d.exp()))
}

fn unit_direction<R: Rng>(rng: &mut R, n: usize) -> Coords {
    loop {
        let v: Coords = (0..=n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(re, im)
            })
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-150 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

fn ln_beta(a: f64, b: f64) -> Result<f64> {
    Ok(ln_gamma(a)? + ln_gamma(b)? - ln_gamma(a + b)?)
}

impl SamplerSpec {
    pub fn new(kind: SamplerKind, n: usize, seed: u64) -> Result<Self> {
        let spec = Self { kind, n, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let nf = self.n as f64;
        match self.kind {
            SamplerKind::UniformBall | SamplerKind::UniformSphere => Ok(()),
            SamplerKind::RadialBetaBall { s } => {
                if s < 1.0 && s.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Sampler(format!("radial exponent s = {s} must be < 1")))
                }
            }
            SamplerKind::TiltedBall { s, k } => {
                if !(s < 1.0 && s.is_finite() && k.is_finite()) {
                    return Err(Error::Sampler(format!("tilted sampler needs s < 1, got s = {s}")));
                }
                if !(2.0 * k < nf + 2.0 - s) {
                    return Err(Error::Sampler(format!(
                        "tilted sampler needs 2k < n + 2 - s, got s = {s}, k = {k}"
                    )));
                }
                Ok(())
            }
        }
    }

    fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// Sample `index`; a pure function of `(seed, index)`.
    pub fn sample(&self, index: u64) -> Result<BallPoint> {
        let mut rng = self.rng(index);
        for _ in 0..MAX_REDRAWS {
            let xi = self.draw(&mut rng)?;
            if (Complex64::new(1.0, 0.0) + xi.last()).norm() >= SOUTH_POLE_GUARD {
                return Ok(xi);
            }
        }
        Err(Error::Sampler(format!(
            "sample {index} hit the south-pole guard {MAX_REDRAWS} times"
        )))
    }

    /// The first `count` samples.
    pub fn samples(&self, count: u64) -> impl Iterator<Item = Result<BallPoint>> + '_ {
        (0..count).map(move |i| self.sample(i))
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> Result<BallPoint> {
        let n = self.n;
        let nf = n as f64;
        match self.kind {
            SamplerKind::UniformSphere => Ok(BallPoint::with_gap(unit_direction(rng, n), 0.0)),
            SamplerKind::UniformBall => {
                let dir = unit_direction(rng, n);
                let u: f64 = 1.0 - rng.random::<f64>();
                // |ξ|² = U^{1/(n+1)}
                let lu = u.ln() / (nf + 1.0);
                let r = (0.5 * lu).exp();
                let gap = (-lu.exp_m1()).max(f64::MIN_POSITIVE);
                Ok(BallPoint::with_gap(
                    dir.into_iter().map(|c| c * r).collect::<Coords>(),
                    gap,
                ))
            }
            SamplerKind::RadialBetaBall { s } => {
                let dir = unit_direction(rng, n);
                let (u, gap) = beta_pair(rng, nf + 1.0, 1.0 - s);
                let r = u.sqrt();
                Ok(BallPoint::with_gap(
                    dir.into_iter().map(|c| c * r).collect::<Coords>(),
                    gap.max(f64::MIN_POSITIVE),
                ))
            }
            SamplerKind::TiltedBall { .. } => {
                let w = self.draw_tilted_siegel(rng)?;
                cayley_psi(&w)
            }
        }
    }

    fn tilted_shape(&self) -> (f64, f64, f64) {
        let SamplerKind::TiltedBall { s, k } = self.kind else {
            unreachable!("only called for tilted samplers")
        };
        let nf = self.n as f64;
        let m = 2.0 * (nf + 2.0 - s - k);
        (s, k, m)
    }

    /// Draws `w ∈ 𝒰ⁿ` with density `∝ height^{-s} |ρ(w, 𝐢)|^{-m}` in
    /// Heisenberg coordinates `w = (ζ, t + i(|ζ|² + r))`.
    fn draw_tilted_siegel(&self, rng: &mut ChaCha8Rng) -> Result<SiegelPoint> {
        let n = self.n;
        let nf = n as f64;
        let (s, _, m) = self.tilted_shape();
        // r ~ BetaPrime(1-s, m-n-2+s)
        let r = (ln_gamma_variate(rng, 1.0 - s) - ln_gamma_variate(rng, m - nf - 2.0 + s)).exp();
        let mut coords: Coords = SmallVec::new();
        let mut zeta2 = 0.0;
        if n > 0 {
            let x = (ln_gamma_variate(rng, nf) - ln_gamma_variate(rng, m - 1.0 - nf)).exp();
            zeta2 = (1.0 + r) * x;
            // direction: uniform on the sphere of Cⁿ
            let dir = unit_direction(rng, n - 1);
            let rad = zeta2.sqrt();
            coords.extend(dir.into_iter().map(|c| c * rad));
        }
        let a = 1.0 + r + zeta2;
        let tau: f64 = StudentT::new(m - 1.0)
            .map_err(|e| Error::Sampler(e.to_string()))?
            .sample(rng);
        let t = a * tau / (m - 1.0).sqrt();
        coords.push(Complex64::new(t, zeta2 + r));
        Ok(SiegelPoint::with_height(coords, r))
    }

    /// `ln ∫_{𝒰ⁿ} height^{-s} |ρ(w, 𝐢)|^{-m} dV(w)` for the tilted sampler.
    fn tilted_ln_normalizer(&self) -> Result<f64> {
        let nf = self.n as f64;
        let (s, _, m) = self.tilted_shape();
        let mut l = m * 2f64.ln() + 0.5 * PI.ln() + ln_gamma(0.5 * (m - 1.0))? - ln_gamma(0.5 * m)?;
        if self.n > 0 {
            l += nf * PI.ln() - ln_gamma(nf)? + ln_beta(nf, m - 1.0 - nf)?;
        }
        l += ln_beta(1.0 - s, m - nf - 2.0 + s)?;
        Ok(l)
    }

    /// `1 / pdf(ξ)` for the ball-supported samplers (Lebesgue measure on
    /// `C^{n+1}`).
    pub fn inverse_density(&self, xi: &BallPoint) -> Result<f64> {
        let n = self.n;
        let nf = n as f64;
        match self.kind {
            SamplerKind::UniformSphere => Err(Error::Sampler(
                "the sphere sampler has no density on the ball".into(),
            )),
            SamplerKind::UniformBall => Ok(ball_volume(n)),
            SamplerKind::RadialBetaBall { s } => {
                let lz = (nf + 1.0) * PI.ln() + ln_gamma(1.0 - s)? - ln_gamma(nf + 2.0 - s)?;
                Ok((lz + s * xi.gap().ln()).exp())
            }
            SamplerKind::TiltedBall { s, k } => {
                let lz = self.tilted_ln_normalizer()? - 4f64.ln();
                let d = (Complex64::new(1.0, 0.0) + xi.last()).norm();
                Ok((lz + s * xi.gap().ln() + 2.0 * k * d.ln()).exp())
            }
        }
    }
}

/// Volume `π^{n+1}/(n+1)!` of the unit ball of `C^{n+1}`.
pub fn ball_volume(n: usize) -> f64 {
    PI.powi(n as i32 + 1) / factorial(n + 1)
}

/// `∫_{𝒰ⁿ} f dV`, sampling `ξ` from `kind` and weighting by `J_Φ(ξ)/pdf(ξ)`.
pub fn integrate_siegel<V, F>(kind: SamplerKind, n: usize, run: &McRun, f: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&SiegelPoint) -> V + Sync,
{
    let spec = SamplerSpec::new(kind, n, run.seed)?;
    if kind == SamplerKind::UniformSphere {
        return Err(Error::Sampler("domain integrals need a ball sampler".into()));
    }
    mean_of(run, |i| {
        let xi = spec.sample(i)?;
        let w = cayley_phi(&xi)?;
        let weight = jac_phi(&xi)? * spec.inverse_density(&xi)?;
        let v = f(&w).parts();
        non_finite(i, V::from_parts([v[0] * weight, v[1] * weight]), &xi)
    })
}

/// `∫_{b𝒰ⁿ} f dβ = (4π^{n+1}/n!) E_σ[f(Φ(ξ)) / |1 + ξ_{n+1}|^{2(n+1)}]`.
pub fn integrate_boundary<V, F>(n: usize, run: &McRun, f: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&SiegelPoint) -> V + Sync,
{
    let spec = SamplerSpec::new(SamplerKind::UniformSphere, n, run.seed)?;
    let c = 4.0 * PI.powi(n as i32 + 1) / factorial(n);
    mean_of(run, |i| {
        let xi = spec.sample(i)?;
        let u = cayley_phi(&xi)?;
        let d2 = (Complex64::new(1.0, 0.0) + xi.last()).norm_sqr();
        let weight = c / d2.powi(n as i32 + 1);
        let v = f(&u).parts();
        non_finite(i, V::from_parts([v[0] * weight, v[1] * weight]), &xi)
    })
}

/// `∫_{B_{n+1}} f dV` with uniform samples.
pub fn integrate_ball<V, F>(n: usize, run: &McRun, f: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&BallPoint) -> V + Sync,
{
    integrate_ball_with(SamplerKind::UniformBall, n, run, f)
}

/// `∫_{B_{n+1}} f dV` under an importance sampler.
pub fn integrate_ball_with<V, F>(kind: SamplerKind, n: usize, run: &McRun, f: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&BallPoint) -> V + Sync,
{
    let spec = SamplerSpec::new(kind, n, run.seed)?;
    mean_of(run, |i| {
        let xi = spec.sample(i)?;
        let weight = spec.inverse_density(&xi)?;
        let v = f(&xi).parts();
        non_finite(i, V::from_parts([v[0] * weight, v[1] * weight]), &xi)
    })
}

/// `∫_{S_{2n+1}} f dσ` for the normalised surface measure.
pub fn integrate_sphere<V, F>(n: usize, run: &McRun, f: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&BallPoint) -> V + Sync,
{
    let spec = SamplerSpec::new(SamplerKind::UniformSphere, n, run.seed)?;
    mean_of(run, |i| {
        let xi = spec.sample(i)?;
        non_finite(i, f(&xi), &xi)
    })
}

/// `(T_α f)(z)`, using the radial sampler `s = max(0, -α)` that absorbs the
/// `height(w)^α` factor of the kernel.
pub fn apply_t_alpha<V, F>(params: &TAlphaParams, z: &SiegelPoint, run: &McRun, f: F) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&SiegelPoint) -> V + Sync,
{
    let kind = if params.alpha < 0.0 {
        SamplerKind::RadialBetaBall { s: -params.alpha }
    } else {
        SamplerKind::UniformBall
    };
    apply_t_alpha_with(params, z, kind, run, f)
}

/// `(T_α f)(z)` under an explicit sampler.
pub fn apply_t_alpha_with<V, F>(
    params: &TAlphaParams,
    z: &SiegelPoint,
    kind: SamplerKind,
    run: &McRun,
    f: F,
) -> Result<MonteCarloEstimate<V>>
where
    V: McValue,
    F: Fn(&SiegelPoint) -> V + Sync,
{
    if z.dim() != params.n {
        return Err(Error::DimensionMismatch {
            expected: params.n,
            found: z.dim(),
        });
    }
    integrate_siegel(kind, params.n, run, |w| {
        let k = t_alpha_kernel(params, z, w).unwrap_or(f64::NAN);
        let [a, b] = f(w).parts();
        V::from_parts([a * k, b * k])
    })
}

/// `(C f)(z) = ∫_{b𝒰ⁿ} S(z, u) f(u) dβ(u)`.
pub fn apply_szego_boundary<F>(n: usize, z: &SiegelPoint, run: &McRun, f: F) -> Result<MonteCarloEstimate<Complex64>>
where
    F: Fn(&SiegelPoint) -> Complex64 + Sync,
{
    if z.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: z.dim(),
        });
    }
    integrate_boundary(n, run, |u| {
        szego_kernel(z, u).unwrap_or(Complex64::new(f64::NAN, 0.0)) * f(u)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunk_merge_matches_two_pass() {
        let xs: Vec<f64> = (0..10_000).map(|i| ((i * 7919) % 1013) as f64 / 17.0).collect();
        let run = McRun::new(xs.len() as u64, 1);
        let est = mean_of(&run, |i| Ok(xs[i as usize])).unwrap();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!((est.value - mean).abs() < 1e-12 * mean);
        assert!((est.stderr - (var / n).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn zero_integrand() {
        let run = McRun::new(1000, 3);
        let e = integrate_siegel(SamplerKind::UniformBall, 1, &run, |_| 0.0).unwrap();
        assert_eq!((e.value, e.stderr), (0.0, 0.0));
        let e = integrate_boundary(0, &run, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(e.value, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn non_finite_samples_abort() {
        let run = McRun::new(100, 3);
        let r = integrate_ball(1, &run, |xi| if xi.gap() > 0.5 { f64::NAN } else { 1.0 });
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn sampler_validation() {
        assert!(SamplerSpec::new(SamplerKind::RadialBetaBall { s: 1.0 }, 0, 0).is_err());
        assert!(SamplerSpec::new(SamplerKind::TiltedBall { s: 0.5, k: 1.0 }, 1, 0).is_ok());
        assert!(SamplerSpec::new(SamplerKind::TiltedBall { s: 0.5, k: 1.25 }, 1, 0).is_err());
    }

    #[test]
    fn tilted_normalizer_reduces_to_radial() {
        for n in 0..3 {
            for &s in &[-0.7, 0.0, 0.4, 0.9] {
                let spec = SamplerSpec::new(SamplerKind::TiltedBall { s, k: 0.0 }, n, 0).unwrap();
                let nf = n as f64;
                let l = spec.tilted_ln_normalizer().unwrap() - 4f64.ln();
                let expect = (nf + 1.0) * PI.ln() + ln_gamma(1.0 - s).unwrap() - ln_gamma(nf + 2.0 - s).unwrap();
                assert!((l - expect).abs() < 1e-12, "n = {n}, s = {s}");
            }
        }
    }
}
