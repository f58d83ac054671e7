// Monte Carlo integration over the Siegel domain and its boundary, with and
// without importance sampling.
use std::f64::consts::PI;

use siegel_norms::mcquad::{integrate_boundary, integrate_siegel, McRun, SamplerKind};
use siegel_norms::siegel::{rho_basepoint, SiegelPoint};

fn main() {
    let n = 1;
    let run = McRun::new(200_000, 0x5EED);
    // ∫ height^{1/2} |ρ(w, 𝐢)|^{-6} dV = 4π² Γ(3/2) Γ(5/2) / Γ(3)²
    let exact = 3.0 * PI.powi(3) / 8.0;
    let f = |w: &SiegelPoint| w.height().sqrt() * rho_basepoint(w).norm().powi(-6);
    for (name, kind) in [
        ("uniform ball", SamplerKind::UniformBall),
        ("radial beta", SamplerKind::RadialBetaBall { s: 0.5 }),
        ("matched tilt", SamplerKind::matched(n, 0.5, 6.0)),
    ] {
        let e = integrate_siegel(kind, n, &run, f).unwrap();
        println!("{name:>13}: {:.6} ± {:.2e}  (exact {exact:.6})", e.value, e.stderr);
    }

    // on b𝒰¹, |u_2|² = t² + |ζ|⁴
    let e = integrate_boundary(n, &run, |u| (-u.last().norm_sqr()).exp()).unwrap();
    println!(
        "\nboundary integral of e^(-|u_2|²): {:.6} ± {:.2e}  (exact π²/2 = {:.6})",
        e.value,
        e.stderr,
        PI * PI / 2.0
    );

    // worker count does not change the bits
    let one = integrate_siegel(SamplerKind::UniformBall, n, &run.with_workers(1), f).unwrap();
    let four = integrate_siegel(SamplerKind::UniformBall, n, &run.with_workers(4), f).unwrap();
    println!("1 vs 4 workers identical: {}", one.value.to_bits() == four.value.to_bits());
}
