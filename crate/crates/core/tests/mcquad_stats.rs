use std::f64::consts::PI;

use num_complex::Complex64;
use siegel_norms::kernels::{closed_t_psi, psi_t, PsiCase, TAlphaParams};
use siegel_norms::mcquad::{
    apply_szego_boundary, apply_t_alpha, apply_t_alpha_with, ball_volume, integrate_ball, integrate_ball_with,
    integrate_boundary, integrate_siegel, integrate_sphere, McRun, SamplerKind, SamplerSpec,
};
use siegel_norms::siegel::{cayley_phi, heis_apply, heis_inverse, rho, BallPoint, HeisenbergElement, SiegelPoint};
use siegel_norms::specfun::ln_gamma;
use statrs::distribution::{Beta, ContinuousCDF};

fn ks_statistic(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Critical value of the one-sample KS test at level 0.001.
fn ks_critical(n: usize) -> f64 {
    1.95 / (n as f64).sqrt()
}

#[test]
fn radial_laws_pass_ks() {
    let count = 20_000;
    for n in 0..3 {
        for (kind, b) in [
            (SamplerKind::UniformBall, 1.0),
            (SamplerKind::RadialBetaBall { s: 0.6 }, 0.4),
            (SamplerKind::RadialBetaBall { s: -1.5 }, 2.5),
        ] {
            let spec = SamplerSpec::new(kind, n, 11).unwrap();
            let r2: Vec<f64> = spec.samples(count).map(|x| x.unwrap().norm_sqr()).collect();
            let law = Beta::new(n as f64 + 1.0, b).unwrap();
            let d = ks_statistic(r2, |x| law.cdf(x));
            assert!(d < ks_critical(count as usize), "n={n} {kind:?}: D = {d}");
        }
    }
}

#[test]
fn sphere_coordinates_pass_ks() {
    let count = 20_000;
    for n in 1..4 {
        let spec = SamplerSpec::new(SamplerKind::UniformSphere, n, 5).unwrap();
        let pts: Vec<BallPoint> = spec.samples(count).map(|x| x.unwrap()).collect();
        assert!(pts.iter().all(|p| (p.norm_sqr() - 1.0).abs() < 1e-12));
        // |ξ_{n+1}|² on the sphere of C^{n+1} is Beta(1, n)
        let law = Beta::new(1.0, n as f64).unwrap();
        let d = ks_statistic(pts.iter().map(|p| p.last().norm_sqr()).collect(), |x| law.cdf(x));
        assert!(d < ks_critical(count as usize), "n={n}: D = {d}");
    }
}

#[test]
fn tilted_height_law() {
    let count = 20_000;
    for n in 0..3 {
        let s = 0.3;
        let k = 0.3 * (n as f64 + 2.0 - s);
        let m = 2.0 * (n as f64 + 2.0 - s - k);
        let spec = SamplerSpec::new(SamplerKind::TiltedBall { s, k }, n, 3).unwrap();
        let u: Vec<f64> = spec
            .samples(count)
            .map(|x| {
                let h = cayley_phi(&x.unwrap()).unwrap().height();
                h / (1.0 + h)
            })
            .collect();
        let law = Beta::new(1.0 - s, m - n as f64 - 2.0 + s).unwrap();
        let d = ks_statistic(u, |x| law.cdf(x));
        assert!(d < ks_critical(count as usize), "n={n}: D = {d}");
    }
}

#[test]
fn importance_weights_integrate_to_volume() {
    let run = McRun::new(200_000, 21);
    for n in 0..3 {
        let nf = n as f64;
        for kind in [
            SamplerKind::RadialBetaBall { s: 0.4 },
            SamplerKind::TiltedBall { s: 0.2, k: 0.5 },
            SamplerKind::TiltedBall { s: -0.5, k: 0.5 * nf + 1.0 },
            SamplerKind::matched(n, 0.3, 2.0 * nf + 4.0),
        ] {
            let e = integrate_ball_with(kind, n, &run, |_| 1.0).unwrap();
            assert!(e.z_score(ball_volume(n)) < 4.0, "n={n} {kind:?}: {e:?}");
        }
    }
}

#[test]
fn estimates_do_not_depend_on_workers() {
    let base = McRun::new(50_000, 0x5EED);
    let f = |w: &SiegelPoint| (-w.coords().iter().map(|c| c.norm_sqr()).sum::<f64>()).exp();
    let serial = integrate_siegel(SamplerKind::UniformBall, 1, &base.with_workers(1), f).unwrap();
    for workers in [2, 3, 4, 7] {
        let par = integrate_siegel(SamplerKind::UniformBall, 1, &base.with_workers(workers), f).unwrap();
        assert_eq!(serial.value.to_bits(), par.value.to_bits());
        assert_eq!(serial.stderr.to_bits(), par.stderr.to_bits());
    }
    let spec = SamplerSpec::new(SamplerKind::RadialBetaBall { s: 0.5 }, 2, 9).unwrap();
    let forward: Vec<BallPoint> = spec.samples(100).map(|x| x.unwrap()).collect();
    for i in (0..100).rev() {
        assert_eq!(spec.sample(i).unwrap(), forward[i as usize]);
    }
}

#[test]
fn stderr_is_calibrated() {
    let n = 1;
    // ∫_B |ξ|² dV = vol · (n+1)/(n+2)
    let truth = ball_volume(n) * (n as f64 + 1.0) / (n as f64 + 2.0);
    let covered = (0..50)
        .filter(|&seed| {
            let e = integrate_ball(n, &McRun::new(2000, 1000 + seed), |x| x.norm_sqr()).unwrap();
            (e.value - truth).abs() <= 2.0 * e.stderr
        })
        .count();
    assert!(covered >= 45, "coverage {covered}/50");
}

#[test]
fn sphere_and_gaussian_moments() {
    let run = McRun::new(200_000, 8);
    for n in 0..3 {
        let e = integrate_sphere(n, &run, |x| x.last().norm_sqr()).unwrap();
        assert!(e.z_score(1.0 / (n as f64 + 1.0)) < 4.0);
    }
    let e = integrate_siegel(SamplerKind::UniformBall, 0, &run, |w| (-w.last().norm_sqr()).exp()).unwrap();
    // upper half plane: π/2
    assert!(e.z_score(PI / 2.0) < 4.0, "{e:?}");
}

#[test]
fn forelli_reduction() {
    let run = McRun::new(400_000, 77);
    for n in 1..3 {
        let f = |w: &[Complex64]| (-w.iter().map(|c| c.norm_sqr()).sum::<f64>()).exp() * (1.0 + w[0].re);
        let boundary = integrate_boundary(n, &run, |u| f(&u.coords()[1..])).unwrap();
        let bulk = integrate_siegel(SamplerKind::UniformBall, n - 1, &run.reseeded(1), |w| f(w.coords())).unwrap();
        let z = (boundary.value - PI * bulk.value).abs() / boundary.stderr.hypot(PI * bulk.stderr);
        assert!(z < 3.0, "n={n}: {boundary:?} vs π·{bulk:?}");
    }
}

#[test]
fn one_variable_reduction() {
    let run = McRun::new(400_000, 78);
    for n in 1..3 {
        let nf = n as f64;
        let right = PI.powi(n as i32) / (1..n).product::<usize>() as f64
            * PI.sqrt()
            * ln_gamma(0.5 * nf).unwrap().exp()
            / 2.0;
        for z in [
            SiegelPoint::origin(n),
            SiegelPoint::boundary(&vec![Complex64::new(0.3, -0.4); n], 1.2),
        ] {
            let e = integrate_boundary(n, &run, |w| {
                let lam = Complex64::new(0.0, 2.0) * rho(w, &z).unwrap();
                (-lam.norm_sqr()).exp()
            })
            .unwrap();
            assert!(e.z_score(right) < 3.0, "n={n}: {e:?} vs {right}");
        }
    }
}

#[test]
fn szego_reproduces_boundary_values() {
    let run = McRun::new(200_000, 31);
    for n in 0..3 {
        let e = -(n as i32) - 1;
        let g = |u: &SiegelPoint| siegel_norms::siegel::rho_basepoint(u).powi(e);
        let z = cayley_phi(&BallPoint::new(vec![Complex64::new(0.2, 0.1); n + 1])).unwrap();
        let est = apply_szego_boundary(n, &z, &run, g).unwrap();
        assert!(est.z_score(g(&z)) < 3.0, "n={n}: {est:?} vs {}", g(&z));
        let zero = apply_szego_boundary(n, &z, &run, |_| Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(zero.value, Complex64::new(0.0, 0.0));
    }
}

#[test]
fn szego_heisenberg_covariance() {
    let run = McRun::new(200_000, 32);
    let n = 1;
    let h = HeisenbergElement::new(vec![Complex64::new(0.4, -0.3)], 0.7);
    let hinv = heis_inverse(&h);
    let f = |u: &SiegelPoint| Complex64::new((-u.coords().iter().map(|c| c.norm_sqr()).sum::<f64>()).exp(), 0.0);
    let z = cayley_phi(&BallPoint::new(vec![Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.1)])).unwrap();
    let at_z = apply_szego_boundary(n, &z, &run, f).unwrap();
    let hz = heis_apply(&h, &z).unwrap();
    let moved = apply_szego_boundary(n, &hz, &run, |u| f(&heis_apply(&hinv, u).unwrap())).unwrap();
    let d = (at_z.value - moved.value).norm();
    assert!(d < 3.0 * at_z.stderr.hypot(moved.stderr), "{at_z:?} vs {moved:?}");
}

#[test]
fn t_alpha_on_height_power() {
    // T_0 height^{-1/2} at 𝐢 in dimension 0 equals π.
    let params = TAlphaParams::new(0, 0.0, 2.0).unwrap();
    let b = SiegelPoint::basepoint(0);
    let run = McRun::new(200_000, 41);
    let e = apply_t_alpha_with(&params, &b, SamplerKind::RadialBetaBall { s: 0.5 }, &run, |w| {
        w.height().powf(-0.5)
    })
    .unwrap();
    assert!(e.z_score(PI) < 3.0, "{e:?}");
    let zero = apply_t_alpha(&params, &b, &run, |_| 0.0).unwrap();
    assert_eq!(zero.value, 0.0);
}

#[test]
fn t_alpha_on_test_functions() {
    let run = McRun::new(200_000, 42);
    for (n, alpha, p, t) in [(0, 0.0, 2.0, 0.3), (1, 0.5, 3.0, 0.2), (2, -0.3, 2.5, 0.25)] {
        let params = TAlphaParams::new(n, alpha, p).unwrap();
        assert_eq!(params.case(), PsiCase::Direct);
        for (k, xi) in [0.0, 0.3, -0.45].iter().enumerate() {
            let z = cayley_phi(&BallPoint::new(vec![Complex64::new(*xi, 0.5 * xi); n + 1])).unwrap();
            let kind = SamplerKind::matched(n, alpha - t, n as f64 + 2.0 + alpha + 2.0 * params.beta - 2.0 * t);
            let e = apply_t_alpha_with(&params, &z, kind, &run.reseeded(k as u64), |w| {
                psi_t(&params, PsiCase::Direct, t, w).unwrap()
            })
            .unwrap();
            let closed = closed_t_psi(&params, t, &z).unwrap();
            assert!(e.z_score(closed) < 3.0, "{n} {alpha} {p} at {z:?}: {e:?} vs {closed}");
        }
    }
}

#[test]
fn bulk_integral_under_two_samplers() {
    let run = McRun::new(300_000, 51);
    let f = |w: &SiegelPoint| w.height().powf(0.5) / rho(w, &SiegelPoint::basepoint(1)).unwrap().norm().powi(6);
    // 4π² Γ(3/2) Γ(5/2) / Γ(3)²
    let closed = 4.0 * PI * PI * (ln_gamma(1.5).unwrap() + ln_gamma(2.5).unwrap()).exp() / 4.0;
    let a = integrate_siegel(SamplerKind::UniformBall, 1, &run, f).unwrap();
    let b = integrate_siegel(SamplerKind::matched(1, 0.5, 6.0), 1, &run.reseeded(3), f).unwrap();
    assert!(a.z_score(closed) < 4.0, "{a:?} vs {closed}");
    assert!(b.z_score(closed) < 4.0, "{b:?} vs {closed}");
    assert!(b.stderr < 1e-12 * closed);
}
