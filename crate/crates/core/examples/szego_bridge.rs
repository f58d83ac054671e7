// Extends a function on 𝒰⁰ to the boundary of 𝒰¹ and compares norms and the
// two projections.
use siegel_norms::mcquad::McRun;
use siegel_norms::norms::{bridge_check, BridgeFunction};

fn main() {
    let r = bridge_check(1, 2.0, BridgeFunction::default(), &McRun::new(200_000, 0x5EED)).unwrap();
    println!(
        "‖g‖² = {:.6} ± {:.1e}, ‖f‖² = {:.6} ± {:.1e}, z = {:.2}",
        r.boundary_norm_p.value, r.boundary_norm_p.stderr, r.bulk_norm_p.value, r.bulk_norm_p.stderr, r.norm_z_score
    );
    for p in &r.pointwise {
        println!(
            "at {:.2?}: C g = {:.6}, π^(-1/2) P f = {:.6}, z = {:.2}",
            p.point.coords(),
            p.szego.value,
            p.bergman.value,
            p.z_score
        );
    }
    println!("pass: {}", r.pass);
}
