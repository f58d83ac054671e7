use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use siegel_norms::kernels::{
    bergman_kernel, berezin_kernel, closed_operator_psi, closed_p_f_eps, conjugate, extremal_coefficient, f_eps,
    g_eps, h_eps, h_factor, psi_t, szego_kernel, t_alpha_kernel, BergmanTestParams, PsiCase, TAlphaParams,
};
use siegel_norms::mcquad::{integrate_siegel, McRun, SamplerKind};
use siegel_norms::norms::{
    bergman_bounds, berezin_norm, bridge_check, default_t_grid, norm_table, rayleigh_lower_t_case,
    schur_certificate, szego_lower, t_alpha_norm_exact, verify_identity, BridgeFunction, IdentityCase,
    NormSource, SchurSide, TableSelection,
};
use siegel_norms::siegel::{cayley_phi, heis_apply, rho_basepoint, BallPoint, Coords, HeisenbergElement, SiegelPoint};
use siegel_norms::specfun::hyp2f1_integral_oracle;

fn point(n: usize, x: f64, y: f64) -> SiegelPoint {
    cayley_phi(&BallPoint::new(vec![Complex64::new(x, y); n + 1])).unwrap()
}

fn interior(n: usize) -> impl Strategy<Value = SiegelPoint> {
    prop::collection::vec((-0.4f64..0.4, -0.4f64..0.4), n + 1).prop_map(|v| {
        let c: Coords = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        cayley_phi(&BallPoint::new(c)).unwrap()
    })
}

fn heis(n: usize) -> impl Strategy<Value = HeisenbergElement> {
    (prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n), -5.0f64..5.0).prop_map(|(z, t)| {
        HeisenbergElement::new(z.into_iter().map(|(a, b)| Complex64::new(a, b)).collect::<Coords>(), t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kernels_are_heisenberg_invariant(
        (z, w, h) in (0usize..3).prop_flat_map(|n| (interior(n), interior(n), heis(n))),
        alpha in -0.9f64..3.0,
    ) {
        let n = z.dim();
        let (hz, hw) = (heis_apply(&h, &z).unwrap(), heis_apply(&h, &w).unwrap());
        let u = SiegelPoint::boundary(w.z_prime(), w.last().re);
        let hu = heis_apply(&h, &u).unwrap();
        let rel = |a: Complex64, b: Complex64| (a - b).norm() / b.norm();
        prop_assert!(rel(bergman_kernel(&hz, &hw).unwrap(), bergman_kernel(&z, &w).unwrap()) < 1e-9);
        prop_assert!(rel(szego_kernel(&hz, &hu).unwrap(), szego_kernel(&z, &u).unwrap()) < 1e-9);
        let params = TAlphaParams::new(n, alpha, 2.0).unwrap();
        let a = t_alpha_kernel(&params, &hz, &hw).unwrap();
        let b = t_alpha_kernel(&params, &z, &w).unwrap();
        prop_assert!((a / b - 1.0).abs() < 1e-9, "{a} {b}");
        let a = berezin_kernel(&hz, &hw).unwrap();
        let b = berezin_kernel(&z, &w).unwrap();
        prop_assert!((a / b - 1.0).abs() < 1e-9, "{a} {b}");
    }

    #[test]
    fn berezin_is_adjoint_of_t_n_plus_2((z, w) in (0usize..3).prop_flat_map(|n| (interior(n), interior(n)))) {
        let n = z.dim();
        let params = TAlphaParams::new(n, n as f64 + 2.0, 2.0).unwrap();
        let t = t_alpha_kernel(&params, &w, &z).unwrap();
        let b = berezin_kernel(&z, &w).unwrap();
        prop_assert!((t / b - 1.0).abs() < 1e-12, "{t} {b}");
    }

    #[test]
    fn hypergeometric_factor_is_at_most_one(
        n in 0usize..3, alpha in -0.5f64..2.0, p in 1.2f64..6.0, frac in 0.05f64..0.95, lam in 0.0f64..1.0,
    ) {
        let params = TAlphaParams::new(n, alpha, p).unwrap();
        prop_assume!(params.is_bounded());
        let case = params.case();
        let (lo, hi) = params.t_range(case);
        let t = lo + frac * (hi - lo);
        let h = h_factor(&params, case, t, 1.0 - lam).unwrap();
        prop_assert!(h > 0.0 && h <= 1.0 + 1e-12, "H = {h}");
        prop_assert!((h_factor(&params, case, t, 0.0).unwrap() - 1.0).abs() < 1e-12);
        let z = point(n, 0.3 * lam, -0.2);
        let closed = closed_operator_psi(&params, case, t, &z).unwrap();
        let cap = extremal_coefficient(&params, case, t).unwrap() * psi_t(&params, case, t, &z).unwrap();
        prop_assert!(closed <= cap * (1.0 + 1e-12));
    }

    #[test]
    fn projection_splits_into_g_and_h(n in 0usize..3, p in 2.2f64..8.0, frac in 0.05f64..0.95, z in interior(1)) {
        let probe = BergmanTestParams::new(n, p, 1e-3);
        prop_assume!(probe.is_ok());
        let kappa = probe.unwrap().kappa;
        let params = BergmanTestParams::new(n, p, frac * kappa).unwrap();
        let z = if n == 1 { z } else { point(n, 0.2, -0.1) };
        let lhs = closed_p_f_eps(&params, &z).unwrap();
        let rhs = g_eps(&params, &z).unwrap() + h_eps(&params, &z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm());
        // the same closed form with the Euler-integral evaluator
        let r = rho_basepoint(&z);
        let (a, b, c) = params.hyp_params();
        let lam = Complex64::new(1.0, 0.0) - r.inv();
        prop_assume!(lam.norm() <= 0.9);
        let oracle = hyp2f1_integral_oracle(a, b, c, lam).unwrap()
            * r.powf(-params.theta - params.epsilon)
            * params.projection_coefficient().unwrap();
        prop_assert!((lhs - oracle).norm() <= 1e-8 * lhs.norm(), "{lhs} vs {oracle}");
    }
}

#[test]
fn kernel_examples() {
    let b = SiegelPoint::basepoint(0);
    let w = SiegelPoint::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 2.0)]);
    let b1 = SiegelPoint::basepoint(1);
    assert!((berezin_kernel(&b1, &b1).unwrap() - 2.0 / (4.0 * PI * PI)).abs() < 1e-15);
    let w0 = SiegelPoint::new(vec![Complex64::new(0.0, 2.0)]);
    assert!((berezin_kernel(&b, &w0).unwrap() - 16.0 / 81.0 / (4.0 * PI)).abs() < 1e-15);
    assert_eq!(w.height(), 2.0);
    let params = TAlphaParams::new(1, 0.0, 2.0).unwrap();
    assert!((t_alpha_kernel(&params, &b1, &b1).unwrap() - 2.0 / (4.0 * PI * PI)).abs() < 1e-15);
}

#[test]
fn berezin_transform_of_one() {
    let run = McRun::new(200_000, 61);
    for (n, z) in [(0, point(0, 0.3, 0.2)), (1, point(1, -0.2, 0.3)), (2, point(2, 0.1, -0.25))] {
        let kind = SamplerKind::matched(n, 0.0, 2.0 * (n as f64 + 2.0));
        let e = integrate_siegel(kind, n, &run, |w| berezin_kernel(&z, w).unwrap()).unwrap();
        assert!(e.z_score(1.0) < 3.0, "n={n}: {e:?}");
    }
}

#[test]
fn bergman_projection_of_f_eps() {
    let params = BergmanTestParams::new(1, 4.0, 0.5).unwrap();
    let z = point(1, 0.15, -0.1);
    let run = McRun::new(400_000, 62);
    let e = integrate_siegel(SamplerKind::UniformBall, 1, &run, |w| {
        bergman_kernel(&z, w).unwrap() * f_eps(&params, w).unwrap()
    })
    .unwrap();
    let closed = closed_p_f_eps(&params, &z).unwrap();
    assert!(e.z_score(closed) < 3.0, "{e:?} vs {closed}");
}

#[test]
fn berezin_norm_is_t_alpha_norm_at_conjugate() {
    for n in 0..4 {
        for k in 0..5 {
            let p = 1.1 + 0.9 * k as f64;
            let q = conjugate(p);
            let a = berezin_norm(n, p).unwrap();
            let b = t_alpha_norm_exact(n, n as f64 + 2.0, q).unwrap();
            assert!((a / b - 1.0).abs() < 1e-12, "n={n} p={p}: {a} vs {b}");
        }
    }
}

#[test]
fn szego_lower_is_bergman_lower_one_dimension_down() {
    for n in 1..5 {
        for p in [1.1, 1.5, 2.0, 3.0, 7.5] {
            let a = szego_lower(n, p).unwrap();
            let b = bergman_bounds(n - 1, p).unwrap().lower;
            assert!((a - b).abs() < 1e-12 * b);
        }
    }
}

#[test]
fn bergman_upper_bound_is_self_dual() {
    for n in 0..5 {
        for k in 1..20 {
            let p = 1.0 + 0.25 * k as f64;
            let a = bergman_bounds(n, p).unwrap().upper;
            let b = bergman_bounds(n, conjugate(p)).unwrap().upper;
            assert!((a - b).abs() < 1e-12 * a, "n={n} p={p}");
        }
    }
}

#[test]
fn conjecture_sandwich() {
    let ps: Vec<f64> = (0..40).map(|k| 1.05 + 0.15 * k as f64).chain([2.0]).collect();
    let mut count = 0;
    for n in 0..5 {
        for row in norm_table(n, &ps, TableSelection::bergman_only()).unwrap() {
            assert_eq!(row.source, NormSource::Bergman);
            let c = row.conjectured.unwrap();
            let u = row.upper.unwrap();
            assert!(row.lower <= c && c <= u, "{row:?}");
            if row.p == 2.0 {
                assert_eq!(row.lower, 1.0);
                assert_eq!(c, 1.0);
            }
            count += 1;
        }
    }
    assert!(count >= 200);
}

#[test]
fn exact_norm_values() {
    assert!((t_alpha_norm_exact(0, 0.0, 2.0).unwrap() - PI).abs() < 1e-12);
    assert!((berezin_norm(0, 2.0).unwrap() - 0.75 * PI).abs() < 1e-12);
    assert_eq!(berezin_norm(3, f64::INFINITY).unwrap(), 1.0);
    for k in 0..20 {
        let p = 1.1 + 0.5 * k as f64;
        assert!((szego_lower(0, p).unwrap() - 1.0 / (PI / p).sin()).abs() < 1e-12);
    }
    assert!(t_alpha_norm_exact(0, -0.5, 2.0).is_err());
    assert!(t_alpha_norm_exact(0, -0.4, 2.0).is_ok());
}

#[test]
fn rayleigh_estimates_stay_below_exact_norm() {
    let run = McRun::new(20_000, 71);
    for (n, alpha, p) in [(0, 0.0, 2.0), (1, 0.5, 3.0), (2, 0.0, 1.5), (0, 0.2, 1.2), (1, -0.3, 4.0)] {
        let params = TAlphaParams::new(n, alpha, p).unwrap();
        let exact = t_alpha_norm_exact(n, alpha, p).unwrap();
        for case in [PsiCase::Direct, PsiCase::Adjoint] {
            for t in default_t_grid(&params, case) {
                let e = match rayleigh_lower_t_case(&params, case, t, &run) {
                    Ok(e) => e,
                    Err(_) => continue,
                };
                assert!(e.value <= exact + 3.0 * e.stderr, "{n} {alpha} {p} {case:?} t={t}: {e:?} > {exact}");
            }
        }
    }
}

#[test]
fn schur_certificates_small_run() {
    let run = McRun::new(50_000, 72);
    for (n, alpha, p) in [(0, 0.0, 2.0), (1, 0.5, 3.0), (2, 0.0, 1.5)] {
        let params = TAlphaParams::new(n, alpha, p).unwrap();
        let exact = t_alpha_norm_exact(n, alpha, p).unwrap();
        for (k, z) in [point(n, 0.2, 0.1), point(n, -0.3, 0.35)].into_iter().enumerate() {
            for side in [SchurSide::Row, SchurSide::Column] {
                let r = schur_certificate(&params, &z, side, &run.reseeded(k as u64)).unwrap();
                assert!((r.constant - exact).abs() < 1e-12 * exact);
                assert!(r.pass, "{r:?}");
            }
        }
    }
}

#[test]
fn bridge_small_run() {
    let r = bridge_check(1, 2.0, BridgeFunction::default(), &McRun::new(100_000, 73)).unwrap();
    assert!(r.pass, "{r:?}");
    let zero = bridge_check(2, 3.0, BridgeFunction::Zero, &McRun::new(1000, 1)).unwrap();
    assert!(zero.pass);
    assert!(bridge_check(0, 2.0, BridgeFunction::default(), &McRun::new(1000, 1)).is_err());
}

#[test]
fn identity_cases_reject_bad_parameters() {
    let z = SiegelPoint::basepoint(1);
    let bad = IdentityCase::KeylemDomain { z: z.clone(), theta: -0.5, gamma: 0.0 };
    assert!(verify_identity(&bad, &McRun::new(1000, 1)).is_err());
    let bad = IdentityCase::KeylemDomain { z, theta: 1.0, gamma: -1.5 };
    assert!(verify_identity(&bad, &McRun::new(1000, 1)).is_err());
}
