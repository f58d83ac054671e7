// Evaluates the Gauss hypergeometric function inside the unit disk, near
// λ = 1 and on the unit circle, and checks it against the Euler integral.
use num_complex::Complex64;
use siegel_norms::specfun::{
    gauss_value, hyp2f1, hyp2f1_integral_oracle, hyp2f1_real, lemma_error_constant, Hyp2F1Method, Hyp2F1Query,
};

fn main() {
    let (a, b, c) = (0.7, 1.3, 2.9);
    println!("F({a}, {b}; {c}; λ)");
    for lam in [
        Complex64::new(0.3, 0.0),
        Complex64::new(-0.6, 0.5),
        Complex64::from_polar(0.9, 2.0),
        Complex64::from_polar(1.0, 0.4),
    ] {
        let v = hyp2f1(&Hyp2F1Query::new(a, b, c, lam)).unwrap();
        let oracle = if lam.norm() < 1.0 {
            format!("{:.15}", hyp2f1_integral_oracle(a, b, c, lam).unwrap())
        } else {
            "-".into()
        };
        println!("  λ = {lam:.3}: {v:.15}   Euler integral: {oracle}");
    }

    // The direct series converges slowly for |λ| near 1; the automatic route
    // switches to a transformed argument.
    let q = Hyp2F1Query::real(a, b, c, 0.45);
    let direct = hyp2f1(&q.with_method(Hyp2F1Method::DirectSeries)).unwrap();
    let euler = hyp2f1(&q.with_method(Hyp2F1Method::EulerTransformed)).unwrap();
    println!("\nat λ = 0.45: direct {direct:.15}, Euler-transformed {euler:.15}");

    // The error constant needs c > a + b + 1.
    let c = a + b + 1.4;
    let g = gauss_value(a, b, c).unwrap();
    let k = lemma_error_constant(a, b, c).unwrap();
    println!("\nc = {c}: F(1) = {g:.15}, error constant C = {k:.6}");
    for eps in [1e-1, 1e-2, 1e-4, 1e-8] {
        let v = hyp2f1_real(a, b, c, 1.0 - eps).unwrap();
        println!("  |F(1-{eps:e}) - F(1)| = {:.3e}  <=  C·ε = {:.3e}", (v - g).abs(), k * eps);
    }
}
