//! The Gauss hypergeometric function `₂F₁(a, b; c; λ)` on the closed unit disk.
//!
//! Evaluation is split by region:
//!
//! * `|λ| ≤ 1/2`: the defining power series.
//! * `|1 - λ| ≤ 1/2`: the connection formula around `λ = 1`, which expands in
//!   powers of `1 - λ`. When `c - a - b` is close to an integer the two terms
//!   of that formula blow up and cancel, so the value is recovered by
//!   symmetric extrapolation in `b`.
//! * `|λ / (λ - 1)| ≤ 1/2`: the Pfaff transformation.
//! * otherwise: Taylor continuation of the hypergeometric ODE from `|λ| = 1/2`
//!   along the ray through `λ`.
//!
//! In every branch the power series in use has ratio at most 1/2.

use num_complex::Complex64;

use super::gamma::gamma_ratio;
use super::quad;
use crate::error::{domain, Error, Result};

const SERIES_TOL: f64 = 1e-15;
const MAX_TERMS: usize = 1_000_000;
const BOUNDARY_TOL: f64 = 1e-12;
/// Extrapolation step used when `c - a - b` is nearly an integer.
const NEAR_INT_STEP: f64 = 1e-3;

/// How [`hyp2f1`] should evaluate a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Hyp2F1Method {
    /// Pick the evaluation route from the location of `λ`.
    #[default]
    Auto,
    /// Sum the defining series at `λ`, whatever `|λ|` is.
    DirectSeries,
    /// Apply `F(a,b;c;λ) = (1-λ)^{c-a-b} F(c-a,c-b;c;λ)` and sum the series
    /// of the right side.
    EulerTransformed,
}

/// Parameters and argument of a `₂F₁` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Query {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub lambda: Complex64,
    pub method: Hyp2F1Method,
}

impl Hyp2F1Query {
    pub fn new(a: f64, b: f64, c: f64, lambda: Complex64) -> Self {
        Self {
            a,
            b,
            c,
            lambda,
            method: Hyp2F1Method::Auto,
        }
    }

    pub fn real(a: f64, b: f64, c: f64, x: f64) -> Self {
        Self::new(a, b, c, Complex64::new(x, 0.0))
    }

    pub fn with_method(mut self, method: Hyp2F1Method) -> Self {
        self.method = method;
        self
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn is_polynomial(a: f64, b: f64) -> bool {
    is_nonpositive_integer(a) || is_nonpositive_integer(b)
}

fn check_params(a: f64, b: f64, c: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(domain("hyp2f1", "parameters must be finite"));
    }
    if is_nonpositive_integer(c) {
        return Err(domain("hyp2f1", format!("c = {c} is a non-positive integer")));
    }
    Ok(())
}

/// Sums `Σ (a)_k (b)_k / ((c)_k k!) z^k` with the three-small-terms rule.
fn power_series(a: f64, b: f64, c: f64, z: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= z * ((a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)));
        if term == Complex64::new(0.0, 0.0) {
            return Ok(sum);
        }
        sum += term;
        if term.norm() <= SERIES_TOL * sum.norm() {
            small += 1;
            if small == 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        op: "hyp2f1 series",
        terms: MAX_TERMS,
    })
}

/// Connection formula at `λ = 1 - w`, for `c - a - b` not an integer.
fn connection_at_one(a: f64, b: f64, c: f64, w: Complex64) -> Result<Complex64> {
    let m = c - a - b;
    let a1 = gamma_ratio(&[c, m], &[c - a, c - b])?;
    let a2 = gamma_ratio(&[c, -m], &[a, b])?;
    let mut out = Complex64::new(0.0, 0.0);
    if a1 != 0.0 {
        out += power_series(a, b, 1.0 - m, w)? * a1;
    }
    if a2 != 0.0 {
        out += w.powf(m) * power_series(c - a, c - b, 1.0 + m, w)? * a2;
    }
    Ok(out)
}

/// `F(a, b; c; 1 - w)` for `|w| ≤ 1/2`.
fn near_one(a: f64, b: f64, c: f64, w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return gauss_value(a, b, c).map(|g| Complex64::new(g, 0.0));
    }
    let m = c - a - b;
    if (m - m.round()).abs() > 0.5 * NEAR_INT_STEP {
        return connection_at_one(a, b, c, w);
    }
    // F is analytic in b, so the average of values at b ± jδ is even in δ.
    // Three such averages cancel the δ² and δ⁴ terms.
    const WEIGHTS: [f64; 3] = [1.5, -0.6, 0.1];
    let mut out = Complex64::new(0.0, 0.0);
    for (j, wt) in WEIGHTS.iter().enumerate() {
        let d = (j + 1) as f64 * NEAR_INT_STEP;
        let plus = connection_at_one(a, b + d, c, w)?;
        let minus = connection_at_one(a, b - d, c, w)?;
        out += (plus + minus) * (0.5 * wt);
    }
    Ok(out)
}

/// Continues `F` from `z0` to `z` by Taylor-stepping the hypergeometric ODE.
fn ode_continuation(a: f64, b: f64, c: f64, z0: Complex64, z: Complex64) -> Result<Complex64> {
    let mut f = power_series(a, b, c, z0)?;
    let mut df = power_series(a + 1.0, b + 1.0, c + 1.0, z0)? * (a * b / c);
    let mut zc = z0;
    let one = Complex64::new(1.0, 0.0);
    let mut steps = 0;
    let mut done = false;
    while !done {
        steps += 1;
        if steps > 10_000 {
            return Err(Error::NonConvergence {
                op: "hyp2f1 continuation",
                terms: steps,
            });
        }
        let radius = zc.norm().min((one - zc).norm());
        let remaining = z - zc;
        done = remaining.norm() <= 0.5 * radius;
        let h = if done {
            remaining
        } else {
            remaining * (0.5 * radius / remaining.norm())
        };
        // z(1-z) F'' + (c - (a+b+1) z) F' - ab F = 0, expanded at zc.
        let p0 = zc * (one - zc);
        let p1 = one - zc * 2.0;
        let q0 = Complex64::new(c, 0.0) - zc * (a + b + 1.0);
        let q1 = -(a + b + 1.0);
        let r0 = -a * b;
        let mut ck = f;
        let mut ck1 = df;
        let mut hk = one;
        let mut val = f;
        let mut der = df;
        let mut small = 0;
        let mut k = 0usize;
        loop {
            let kf = k as f64;
            let ck2 = -((p1 * kf + q0) * ck1 * (kf + 1.0) + ck * (-kf * (kf - 1.0) + q1 * kf + r0))
                / (p0 * ((kf + 2.0) * (kf + 1.0)));
            // hk = h^k; add the h^{k+1} and h^{k+2} contributions.
            let h1 = hk * h;
            if k == 0 {
                val += ck1 * h1;
            }
            let h2 = h1 * h;
            let tv = ck2 * h2;
            let td = ck2 * h1 * (kf + 2.0);
            val += tv;
            der += td;
            if tv.norm() <= 1e-17 * val.norm() && td.norm() <= 1e-17 * der.norm() {
                small += 1;
                if small == 3 {
                    break;
                }
            } else {
                small = 0;
            }
            ck = ck1;
            ck1 = ck2;
            hk = h1;
            k += 1;
            if k > 20_000 {
                return Err(Error::NonConvergence {
                    op: "hyp2f1 continuation",
                    terms: k,
                });
            }
        }
        f = val;
        df = der;
        zc += h;
    }
    Ok(f)
}

fn auto(a: f64, b: f64, c: f64, z: Complex64, w: Complex64) -> Result<Complex64> {
    if is_polynomial(a, b) || z.norm() <= 0.5 {
        return power_series(a, b, c, z);
    }
    if w.norm() <= 0.5 {
        return near_one(a, b, c, w);
    }
    let zp = z / (z - 1.0);
    if zp.norm() <= 0.5 {
        // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)).
        return Ok(w.powf(-a) * power_series(a, c - b, c, zp)?);
    }
    let z0 = z * (0.5 / z.norm());
    ode_continuation(a, b, c, z0, z)
}

fn validate_argument(a: f64, b: f64, c: f64, z: Complex64) -> Result<()> {
    let r = z.norm();
    if !r.is_finite() {
        return Err(domain("hyp2f1", "argument is not finite"));
    }
    if is_polynomial(a, b) {
        return Ok(());
    }
    if r > 1.0 + BOUNDARY_TOL {
        return Err(domain("hyp2f1", format!("|λ| = {r} exceeds 1")));
    }
    if r >= 1.0 - BOUNDARY_TOL && c - a - b <= 0.0 {
        return Err(domain(
            "hyp2f1",
            format!("|λ| = 1 requires c - a - b > 0, got {}", c - a - b),
        ));
    }
    Ok(())
}

/// Evaluates `₂F₁(a, b; c; λ)` for `|λ| ≤ 1`.
pub fn hyp2f1(q: &Hyp2F1Query) -> Result<Complex64> {
    let Hyp2F1Query {
        a,
        b,
        c,
        lambda,
        method,
    } = *q;
    check_params(a, b, c)?;
    validate_argument(a, b, c, lambda)?;
    let w = Complex64::new(1.0, 0.0) - lambda;
    match method {
        Hyp2F1Method::Auto => auto(a, b, c, lambda, w),
        Hyp2F1Method::DirectSeries => power_series(a, b, c, lambda),
        Hyp2F1Method::EulerTransformed => {
            if w == Complex64::new(0.0, 0.0) {
                return gauss_value(a, b, c).map(|g| Complex64::new(g, 0.0));
            }
            Ok(w.powf(c - a - b) * power_series(c - a, c - b, c, lambda)?)
        }
    }
}

/// Real-argument convenience wrapper around [`hyp2f1`].
pub fn hyp2f1_real(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1(&Hyp2F1Query::real(a, b, c, x)).map(|v| v.re)
}

/// `₂F₁(a, b; c; 1 - w)`, taking the distance `w` to 1 directly.
///
/// Near `λ = 1` this avoids the rounding in forming `1 - λ`, which matters
/// when the result carries a factor `w^{c-a-b}`.
pub fn hyp2f1_complement(a: f64, b: f64, c: f64, w: Complex64) -> Result<Complex64> {
    check_params(a, b, c)?;
    let z = Complex64::new(1.0, 0.0) - w;
    validate_argument(a, b, c, z)?;
    auto(a, b, c, z, w)
}

/// `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))`.
pub fn gauss_value(a: f64, b: f64, c: f64) -> Result<f64> {
    check_params(a, b, c)?;
    if c - a - b <= 0.0 {
        return Err(domain(
            "gauss_value",
            format!("requires c - a - b > 0, got {}", c - a - b),
        ));
    }
    gamma_ratio(&[c, c - a - b], &[c - a, c - b])
}

/// Evaluates the Euler integral
/// `Γ(c)/(Γ(b)Γ(c-b)) ∫₀¹ t^{b-1} (1-t)^{c-b-1} (1-tλ)^{-a} dt`
/// by adaptive quadrature.
///
/// Each half of `[0, 1]` with an integrable endpoint singularity is mapped by
/// `u = t^b` (resp. `v = (1-t)^{c-b}`), which absorbs the singular factor.
pub fn hyp2f1_integral_oracle(a: f64, b: f64, c: f64, lambda: Complex64) -> Result<Complex64> {
    if !(c > b && b > 0.0) {
        return Err(domain(
            "hyp2f1_integral_oracle",
            format!("requires c > b > 0, got b = {b}, c = {c}"),
        ));
    }
    let one = Complex64::new(1.0, 0.0);
    let w = one - lambda;
    if w.re <= 0.0 && w.im == 0.0 {
        return Err(domain(
            "hyp2f1_integral_oracle",
            "1 - λ lies on the branch cut",
        ));
    }
    let e = c - b;
    let kernel = |t: f64| (one - lambda * t).powf(-a);
    const TOL: f64 = 1e-10;

    let left = if b < 1.0 {
        let hi = 0.5f64.powf(b);
        quad::integrate(
            |u| {
                let t = u.powf(1.0 / b);
                kernel(t) * ((1.0 - t).powf(e - 1.0) / b)
            },
            0.0,
            hi,
            TOL,
            TOL,
        )?
    } else {
        quad::integrate(
            |t| kernel(t) * (t.powf(b - 1.0) * (1.0 - t).powf(e - 1.0)),
            0.0,
            0.5,
            TOL,
            TOL,
        )?
    };
    let right = if e < 1.0 {
        let hi = 0.5f64.powf(e);
        quad::integrate(
            |v| {
                let s = v.powf(1.0 / e);
                kernel(1.0 - s) * ((1.0 - s).powf(b - 1.0) / e)
            },
            0.0,
            hi,
            TOL,
            TOL,
        )?
    } else {
        quad::integrate(
            |t| kernel(t) * (t.powf(b - 1.0) * (1.0 - t).powf(e - 1.0)),
            0.5,
            1.0,
            TOL,
            TOL,
        )?
    };
    let norm = gamma_ratio(&[c], &[b, e])?;
    Ok((left + right) * norm)
}

/// The constant `C(a,b,c) = |a| max{2^{-a-1}, Γ(c)Γ(c-a-b-1)/(Γ(c-a-1)Γ(c-b))}`
/// bounding `|F(a,b;c;λ) - F(a,b;c;1)| ≤ C |1 - λ|` on the unit disk.
pub fn lemma_error_constant(a: f64, b: f64, c: f64) -> Result<f64> {
    let bound = (a + b + 1.0).max(a + 1.0).max(b);
    if !(c > bound) {
        return Err(domain(
            "lemma_error_constant",
            format!("requires c > max(a+b+1, a+1, b) = {bound}, got c = {c}"),
        ));
    }
    if a == 0.0 {
        return Ok(0.0);
    }
    let ratio = gamma_ratio(&[c, c - a - b - 1.0], &[c - a - 1.0, c - b])?;
    Ok(a.abs() * 2f64.powf(-a - 1.0).max(ratio))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_argument_is_one() {
        let v = hyp2f1(&Hyp2F1Query::real(2.3, -1.1, 4.0, 0.0)).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn log_identity() {
        let v = hyp2f1_real(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 2.0 * LN_2).abs() < 1e-14);
        for &x in &[0.6, 0.9, 0.99, -0.7, 1.0 - 1e-9] {
            let v = hyp2f1_real(1.0, 1.0, 2.0, x).unwrap();
            let exact = -(-x).ln_1p() / x;
            assert!((v / exact - 1.0).abs() < 1e-12, "x = {x}: {v} vs {exact}");
        }
    }

    #[test]
    fn value_at_one() {
        let v = hyp2f1_real(1.0, 1.0, 3.0, 1.0).unwrap();
        assert!((v - 2.0).abs() < 1e-14);
        assert!((gauss_value(0.5, 0.5, 1.5).unwrap() - PI / 2.0).abs() < 1e-14);
        assert_eq!(gauss_value(0.0, 0.3, 2.0).unwrap(), 1.0);
        assert!(gauss_value(1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn rejects_bad_queries() {
        assert!(hyp2f1(&Hyp2F1Query::real(1.0, 1.0, -2.0, 0.1)).is_err());
        assert!(hyp2f1(&Hyp2F1Query::real(1.0, 1.0, 2.0, 1.0)).is_err());
        assert!(hyp2f1(&Hyp2F1Query::new(1.0, 1.0, 2.0, c(0.0, 1.0))).is_err());
        assert!(hyp2f1(&Hyp2F1Query::real(1.0, 1.0, 2.0, 1.5)).is_err());
    }

    #[test]
    fn polynomial_case_terminates() {
        // F(-2, b; c; z) = 1 - 2bz/c + b(b+1)z²/(c(c+1))
        let (b, cc, z) = (1.5, 2.5, c(0.3, 0.8));
        let v = hyp2f1(&Hyp2F1Query::new(-2.0, b, cc, z)).unwrap();
        let exact = 1.0 - z * (2.0 * b / cc) + z * z * (b * (b + 1.0) / (cc * (cc + 1.0)));
        assert!((v - exact).norm() < 1e-14);
    }

    #[test]
    fn arcsin_identity_on_all_branches() {
        // F(1/2, 1/2; 3/2; x²) = arcsin(x) / x
        for i in 1..40 {
            let x = i as f64 / 40.0;
            let v = hyp2f1_real(0.5, 0.5, 1.5, x * x).unwrap();
            assert!((v - x.asin() / x).abs() < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn near_integer_excess_is_continuous() {
        // c - a - b = 1 exactly, 1 ± 1e-5 and 1 ± 3e-4 should agree smoothly.
        let w = c(0.2, 0.1);
        let base = hyp2f1_complement(0.3, 0.7, 2.0, w).unwrap();
        for &d in &[1e-5, -1e-5, 3e-4, -3e-4, 6e-4] {
            let v = hyp2f1_complement(0.3, 0.7 + d, 2.0, w).unwrap();
            assert!((v - base).norm() < 2.0 * d.abs() + 1e-11, "{d}: {v} vs {base}");
        }
        // F(1,1;2;z) has c - a - b = 0 exactly.
        let z = c(0.8, 0.1);
        let v = hyp2f1(&Hyp2F1Query::new(1.0, 1.0, 2.0, z)).unwrap();
        let exact = -(c(1.0, 0.0) - z).ln() / z;
        assert!((v - exact).norm() < 1e-11, "{v} vs {exact}");
    }

    #[test]
    fn continuation_branch_matches_closed_form() {
        // Points with |z| > 1/2, |1 - z| > 1/2 and |z/(z-1)| > 1/2.
        for &z in &[c(-0.2, 0.9), c(0.1, -0.95), c(-0.6, 0.6), c(0.3, 0.9)] {
            let v = hyp2f1(&Hyp2F1Query::new(1.0, 1.0, 2.0, z)).unwrap();
            let exact = -(c(1.0, 0.0) - z).ln() / z;
            assert!((v - exact).norm() < 1e-12 * exact.norm(), "{z}: {v} vs {exact}");
        }
    }

    #[test]
    fn oracle_examples() {
        let v = hyp2f1_integral_oracle(1.0, 1.0, 2.0, c(0.5, 0.0)).unwrap();
        assert!((v.re - 2.0 * LN_2).abs() < 1e-9);
        let v = hyp2f1_integral_oracle(2.0, 1.0, 3.0, c(0.0, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-10);
        let z = c(0.3, 0.2);
        let o = hyp2f1_integral_oracle(0.7, 1.2, 3.4, z).unwrap();
        let s = hyp2f1(&Hyp2F1Query::new(0.7, 1.2, 3.4, z)).unwrap();
        assert!((o - s).norm() < 1e-9);
        // Both endpoint singularities active.
        let o = hyp2f1_integral_oracle(1.3, 0.3, 0.8, c(-0.5, 0.4)).unwrap();
        let s = hyp2f1(&Hyp2F1Query::new(1.3, 0.3, 0.8, c(-0.5, 0.4))).unwrap();
        assert!((o - s).norm() < 1e-9 * s.norm(), "{o} vs {s}");
    }

    #[test]
    fn lemma_constant_examples() {
        assert_eq!(lemma_error_constant(0.0, 1.0, 3.0).unwrap(), 0.0);
        assert!((lemma_error_constant(1.0, 1.0, 4.0).unwrap() - 3.0).abs() < 1e-13);
        // 0.5 max{2^{-1/2}, Γ(2)Γ(1)/(Γ(1.5)Γ(1.5))} = 2/π
        let v = lemma_error_constant(-0.5, 0.5, 2.0).unwrap();
        assert!((v - 2.0 / PI).abs() < 1e-14, "{v}");
        assert!(lemma_error_constant(1.0, 1.0, 2.5).is_err());
    }

    #[test]
    fn explicit_methods_agree_inside() {
        let q = Hyp2F1Query::new(0.4, 1.7, 2.9, c(0.35, -0.4));
        let auto = hyp2f1(&q).unwrap();
        let direct = hyp2f1(&q.with_method(Hyp2F1Method::DirectSeries)).unwrap();
        let euler = hyp2f1(&q.with_method(Hyp2F1Method::EulerTransformed)).unwrap();
        assert!((auto - direct).norm() < 1e-14);
        assert!((auto - euler).norm() < 1e-13);
    }
}
