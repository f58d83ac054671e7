// Rayleigh-quotient lower bounds approaching the exact norm of T_α, and the
// test-function split for the Bergman projection at p = 4.
use siegel_norms::kernels::{BergmanTestParams, TAlphaParams};
use siegel_norms::mcquad::McRun;
use siegel_norms::norms::{
    bergman_bounds, default_t_grid, rayleigh_lower_bergman, rayleigh_lower_t, t_alpha_norm_exact,
};

fn main() {
    let run = McRun::new(100_000, 0x5EED);
    for (n, alpha, p) in [(0, 0.0, 2.0), (1, 0.5, 3.0), (1, 0.1, 1.2)] {
        let params = TAlphaParams::new(n, alpha, p).unwrap();
        let exact = t_alpha_norm_exact(n, alpha, p).unwrap();
        println!("n={n} α={alpha} p={p}: ‖T_α‖ = {exact:.6}, {:?} family", params.case());
        for t in default_t_grid(&params, params.case()) {
            let e = rayleigh_lower_t(&params, t, &run).unwrap();
            println!("  t = {t:.4}: {:.6} ± {:.1e}, gap {:.4}", e.value, e.stderr, (exact - e.value) / exact);
        }
    }

    let target = bergman_bounds(0, 4.0).unwrap().lower;
    println!("\nBergman projection, n=0, p=4: lower bound {target:.6}");
    for eps in [0.1, 0.05, 0.02, 0.005] {
        let r = rayleigh_lower_bergman(&BergmanTestParams::new(0, 4.0, eps).unwrap(), &run).unwrap();
        println!(
            "  ε = {eps}: ‖g‖/‖f‖ = {:.6}, ‖h‖/‖f‖ = {:.4} ± {:.1e}, net {:.4}",
            r.ratio_g, r.ratio_h.value, r.ratio_h.stderr, r.net_lower
        );
    }
}
