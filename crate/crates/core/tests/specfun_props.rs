use num_complex::Complex64;
use proptest::prelude::*;
use siegel_norms::specfun::{
    gamma_ratio, gauss_value, hyp2f1, hyp2f1_integral_oracle, hyp2f1_real, lemma_error_constant, ln_gamma,
    pochhammer, Hyp2F1Method, Hyp2F1Query,
};

fn disk(r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..r, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn f(a: f64, b: f64, c: f64, z: Complex64) -> Complex64 {
    hyp2f1(&Hyp2F1Query::new(a, b, c, z)).unwrap()
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn euler_transform(a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..4.0, z in disk(0.8)) {
        let lhs = f(a, b, c, z);
        let rhs = (Complex64::new(1.0, 0.0) - z).powf(c - a - b) * f(c - a, c - b, c, z);
        prop_assume!(lhs.norm() > 1e-6);
        prop_assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn matches_integral_oracle(a in -3.0f64..3.0, b in 0.05f64..3.0, extra in 0.05f64..3.0, z in disk(0.9)) {
        let c = b + extra;
        let series = f(a, b, c, z);
        let oracle = hyp2f1_integral_oracle(a, b, c, z).unwrap();
        prop_assume!(series.norm() > 1e-6);
        prop_assert!(rel(series, oracle) < 1e-8, "{series} vs {oracle}");
    }

    #[test]
    fn explicit_methods_agree(a in -2.0f64..2.0, b in -2.0f64..2.0, c in 0.2f64..3.0, z in disk(0.45)) {
        let auto = f(a, b, c, z);
        let direct = hyp2f1(&Hyp2F1Query::new(a, b, c, z).with_method(Hyp2F1Method::DirectSeries)).unwrap();
        let euler = hyp2f1(&Hyp2F1Query::new(a, b, c, z).with_method(Hyp2F1Method::EulerTransformed)).unwrap();
        prop_assume!(auto.norm() > 1e-6);
        prop_assert!(rel(direct, auto) < 1e-12);
        prop_assert!(rel(euler, auto) < 1e-10);
    }

    // The bound comes from the Euler integral, so b > 0 is needed as well.
    #[test]
    fn boundary_consistency(a in -2.0f64..2.0, b in 0.05f64..2.0, gap in 1.05f64..4.0) {
        // c > max(a + b + 1, a + 1, b)
        let c = (a + b + 1.0).max(a + 1.0).max(b) + gap - 1.0;
        prop_assume!(c > 0.0 && c - a - b > 0.2);
        let g = gauss_value(a, b, c).unwrap();
        let k = lemma_error_constant(a, b, c).unwrap();
        for eps in [1e-2, 1e-4] {
            let v = hyp2f1_real(a, b, c, 1.0 - eps).unwrap();
            prop_assert!((v - g).abs() <= k * eps * (1.0 + 1e-9) + 1e-13 * g.abs(), "{v} {g} {k}");
        }
    }

    #[test]
    fn increasing_for_positive_parameters(a in 0.05f64..3.0, b in 0.05f64..3.0, c in 0.05f64..4.0) {
        let mut prev = hyp2f1_real(a, b, c, 0.0).unwrap();
        prop_assert_eq!(prev, 1.0);
        for k in 1..100 {
            let v = hyp2f1_real(a, b, c, 0.99 * k as f64 / 99.0).unwrap();
            prop_assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn duplication(a in 0.1f64..10.0) {
        let lhs = ln_gamma(0.5).unwrap() + ln_gamma(2.0 * a).unwrap();
        let rhs = (2.0 * a - 1.0) * 2f64.ln() + ln_gamma(a).unwrap() + ln_gamma(a + 0.5).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn recurrence(x in 0.01f64..50.0) {
        let lhs = ln_gamma(x + 1.0).unwrap();
        let rhs = x.ln() + ln_gamma(x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()));
        let ratio = gamma_ratio(&[x + 3.0], &[x]).unwrap();
        prop_assert!((ratio / pochhammer(x, 3) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn known_values() {
    assert!((ln_gamma(0.5).unwrap() - std::f64::consts::PI.sqrt().ln()).abs() < 1e-15);
    assert!((ln_gamma(10.0).unwrap() - 362880f64.ln()).abs() < 1e-12);
    // F(1,1;2;x) = -ln(1-x)/x; c - a - b = 0 goes through the extrapolated route
    let x = 0.7;
    assert!((hyp2f1_real(1.0, 1.0, 2.0, x).unwrap() + (1.0f64 - x).ln() / x).abs() < 1e-10);
    assert!((hyp2f1_real(1.0, 1.0, 2.0, 0.3).unwrap() + 0.7f64.ln() / 0.3).abs() < 1e-14);
    // F(a,b;b;x) = (1-x)^{-a}
    let v = f(0.3, 1.7, 1.7, Complex64::new(-0.95, 0.2));
    assert!(rel(v, Complex64::new(1.95, -0.2).powf(-0.3)) < 1e-12);
    assert!((gauss_value(0.5, 0.5, 2.0).unwrap() - 4.0 / std::f64::consts::PI).abs() < 1e-14);
}

#[test]
fn error_bound_fails_for_negative_b() {
    let (a, b) = (1.9738598271534855, -1.0840154222983907);
    let c = a + 1.05;
    let k = lemma_error_constant(a, b, c).unwrap();
    let diff = (hyp2f1_real(a, b, c, 0.99).unwrap() - gauss_value(a, b, c).unwrap()).abs();
    assert!(diff > 2.0 * k * 0.01, "{diff} vs {}", k * 0.01);
}
