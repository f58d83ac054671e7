// Runs every integral identity once per dimension with a modest sample size.
use siegel_norms::mcquad::McRun;
use siegel_norms::norms::{verify_identity, IdentityCase, IdentityTag};

fn main() {
    let run = McRun::new(100_000, 0x5EED);
    for n in 0..3 {
        for tag in IdentityTag::ALL {
            if !tag.supports(n) {
                continue;
            }
            let (case, case_run) = IdentityCase::suite_case(tag, n, 0, &run).unwrap();
            let r = verify_identity(&case, &case_run).unwrap();
            println!(
                "{:<16} n={n}  closed {:>24.8}  mc {:>24.8}  residual {:.2e} (tol {:.2e})  {}",
                tag.as_str(),
                r.closed,
                r.mc.value,
                r.residual,
                r.tolerance(siegel_norms::norms::RESIDUAL_FLOOR),
                if r.pass { "ok" } else { "FAIL" }
            );
        }
    }
}
