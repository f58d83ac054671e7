// Reproducing kernels, the T_α and Berezin kernels, and the closed form of
// T_α applied to its extremal test functions.
use siegel_norms::kernels::{
    bergman_kernel, berezin_kernel, closed_operator_psi, psi_t, szego_kernel, t_alpha_kernel, TAlphaParams,
};
use siegel_norms::siegel::SiegelPoint;

fn main() {
    let b = SiegelPoint::basepoint(1);
    let w = SiegelPoint::new(vec![num_complex::Complex64::new(0.2, 0.1), num_complex::Complex64::new(0.3, 1.2)]);
    let u = SiegelPoint::boundary(&[num_complex::Complex64::new(0.5, 0.0)], 0.7);
    println!("K(𝐢, w) = {:.6}", bergman_kernel(&b, &w).unwrap());
    println!("S(𝐢, u) = {:.6}", szego_kernel(&b, &u).unwrap());
    println!("Berezin kernel(𝐢, w) = {:.6}", berezin_kernel(&b, &w).unwrap());

    for (alpha, p) in [(0.0, 2.0), (0.5, 3.0), (0.1, 1.2)] {
        let params = TAlphaParams::new(1, alpha, p).unwrap();
        let case = params.case();
        let (lo, hi) = params.t_range(case);
        let t = 0.5 * (lo + hi);
        println!("\nα = {alpha}, p = {p}: {case:?} family, t in ({lo:.3}, {hi:.3}), t = {t:.3}");
        println!("  kernel at (𝐢, w): {:.6}", t_alpha_kernel(&params, &b, &w).unwrap());
        for z in [&b, &w] {
            let psi = psi_t(&params, case, t, z).unwrap();
            let image = closed_operator_psi(&params, case, t, z).unwrap();
            println!("  at {:.3?}: ψ = {psi:.6}, (Tψ) = {image:.6}, ratio {:.6}", z.coords(), image / psi);
        }
    }
}
