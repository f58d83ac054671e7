//! Log-gamma, signed gamma ratios and Pochhammer symbols.
//!
//! `ln_gamma` reduces its argument into `[1.5, 2.5)` by the recurrence
//! `Γ(x+1) = xΓ(x)` and sums the Taylor series of `ln Γ(2+z)`, whose
//! coefficients are `(-1)^k (ζ(k) - 1) / k`. For `x ≥ 10` the Stirling
//! series is used instead. Expanding around 2 keeps the relative error small
//! near the zeros of `ln Γ` at 1 and 2, where a Lanczos fit loses digits.

use std::f64::consts::PI;

use crate::error::{domain, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// `ζ(k) - 1` for `k = 2, 3, ...`.
const ZETA_MINUS_ONE: [f64; 40] = [
    6.44934066848226406e-01,
    2.02056903159594292e-01,
    8.23232337111381857e-02,
    3.69277551433699266e-02,
    1.73430619844491402e-02,
    8.34927738192282713e-03,
    4.07735619794433960e-03,
    2.00839282608221426e-03,
    9.94575127818085256e-04,
    4.94188604119464529e-04,
    2.46086553308048320e-04,
    1.22713347578489145e-04,
    6.12481350587048277e-05,
    3.05882363070204933e-05,
    1.52822594086518710e-05,
    7.63719763789976257e-06,
    3.81729326499984022e-06,
    1.90821271655393897e-06,
    9.53962033872796212e-07,
    4.76932986787806447e-07,
    2.38450502727733004e-07,
    1.19219925965311064e-07,
    5.96081890512594801e-08,
    2.98035035146522793e-08,
    1.49015548283650427e-08,
    7.45071178983543006e-09,
    3.72533402478845728e-09,
    1.86265972351304914e-09,
    9.31327432419668166e-10,
    4.65662906503378366e-10,
    2.32831183367650534e-10,
    1.16415501727005193e-10,
    5.82077208790270145e-11,
    2.91038504449710001e-11,
    1.45519218910419849e-11,
    7.27595983505748180e-12,
    3.63797954737865086e-12,
    1.81898965030706607e-12,
    9.09494784026388841e-13,
    4.54747378304215422e-13,
];

/// Stirling coefficients `B_{2k} / (2k (2k-1))`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// `ln Γ(2 + z)` for `|z| ≤ 1/2`.
fn ln_gamma_2p(z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zk = z;
    for (i, zm1) in ZETA_MINUS_ONE.iter().enumerate() {
        zk *= -z;
        let k = (i + 2) as f64;
        let term = zm1 * zk / k;
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    // The k = 1 coefficient is 1 - γ.
    (1.0 - EULER_GAMMA) * z - sum
}

fn ln_gamma_stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        corr += c * pow;
        pow *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_TWO_PI + corr
}

/// `ln Γ(x)` for `x > 0`, without argument checking.
pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x >= 10.0 {
        return ln_gamma_stirling(x);
    }
    if x >= 2.5 {
        // Walk down into [1.5, 2.5).
        let mut y = x;
        let mut prod = 1.0;
        while y >= 2.5 {
            y -= 1.0;
            prod *= y;
        }
        return ln_gamma_2p(y - 2.0) + prod.ln();
    }
    if x >= 1.5 {
        return ln_gamma_2p(x - 2.0);
    }
    if x >= 0.5 {
        // ln Γ(x) = ln Γ(x + 1) - ln x, with ln x taken as ln_1p(x - 1).
        return ln_gamma_2p(x - 1.0) - (x - 1.0).ln_1p();
    }
    // x in (0, 0.5): shift up twice.
    ln_gamma_2p(x) - (x * (x + 1.0)).ln()
}

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(ln_gamma_pos(x))
    } else {
        Err(domain("ln_gamma", format!("argument must be positive, got {x}")))
    }
}

/// `sin(πx)` with exact zeros at integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// `(ln |Γ(x)|, sign Γ(x))` for any real `x` that is not a pole.
pub(crate) fn ln_abs_gamma(x: f64) -> Option<(f64, f64)> {
    if x > 0.0 {
        return Some((ln_gamma_pos(x), 1.0));
    }
    if x == x.floor() {
        return None;
    }
    // Reflection: Γ(x) Γ(1-x) = π / sin(πx).
    let s = sin_pi(x);
    let lg = PI.ln() - s.abs().ln() - ln_gamma_pos(1.0 - x);
    Some((lg, s.signum()))
}

/// `Π Γ(num_i) / Π Γ(den_j)` summed in log space with sign tracking.
///
/// A pole in the denominator makes the ratio zero; a pole in the numerator
/// is a domain error.
pub fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    let mut log = 0.0;
    let mut sign = 1.0;
    for &x in num {
        let (lg, s) = ln_abs_gamma(x)
            .ok_or_else(|| domain("gamma_ratio", format!("pole of Γ at {x} in numerator")))?;
        log += lg;
        sign *= s;
    }
    for &x in den {
        match ln_abs_gamma(x) {
            Some((lg, s)) => {
                log -= lg;
                sign *= s;
            }
            None => return Ok(0.0),
        }
    }
    Ok(sign * log.exp())
}

/// Pochhammer symbol `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (a + j as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_known_values() {
        assert_eq!(ln_gamma(1.0).unwrap(), 0.0);
        assert!(ln_gamma(2.0).unwrap().abs() < 1e-300);
        assert!((ln_gamma(5.0).unwrap() - 24f64.ln()).abs() < 1e-14);
        // 0.5 ln π
        let half = 0.5 * PI.ln();
        assert!((ln_gamma(0.5).unwrap() - half).abs() < 1e-15);
        // mpmath references
        assert!((ln_gamma(1e-3).unwrap() / 6.907178885383853661683 - 1.0).abs() < 1e-14);
        assert!((ln_gamma(1000.0).unwrap() / 5905.220423209181211826 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0).is_err());
        assert!(ln_gamma(-1.5).is_err());
        assert!(ln_gamma(f64::NAN).is_err());
    }

    #[test]
    fn ln_gamma_relative_accuracy_near_one_and_two() {
        // ln Γ(1+δ) ≈ -γ δ + ζ(2) δ²/2
        for &d0 in &[1e-6, -1e-6, 1e-9] {
            let x = 1.0 + d0;
            let d = x - 1.0;
            let lhs = ln_gamma(x).unwrap();
            let rhs = -EULER_GAMMA * d + 0.822_467_033_424_113_2 * d * d;
            assert!((lhs / rhs - 1.0).abs() < 1e-8, "{d}: {lhs} vs {rhs}");
        }
        let x = 2.0 + 1e-7;
        let d = x - 2.0;
        let lhs = ln_gamma(x).unwrap();
        let rhs = (1.0 - EULER_GAMMA) * d;
        assert!((lhs / rhs - 1.0).abs() < 1e-6);
    }

    #[test]
    fn recurrence_is_consistent_across_branches() {
        for i in 1..2000 {
            let x = 0.005 * i as f64;
            let lhs = ln_gamma(x + 1.0).unwrap();
            let rhs = ln_gamma(x).unwrap() + x.ln();
            assert!(
                (lhs - rhs).abs() <= 2e-14 * lhs.abs().max(1.0),
                "x = {x}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn reflection_and_poles() {
        // Γ(-0.5) = -2√π
        let g = gamma_ratio(&[-0.5], &[]).unwrap();
        assert!((g + 2.0 * PI.sqrt()).abs() < 1e-14);
        assert_eq!(gamma_ratio(&[], &[0.0]).unwrap(), 0.0);
        assert!((gamma_ratio(&[], &[3.0]).unwrap() - 0.5).abs() < 1e-16);
        assert_eq!(gamma_ratio(&[1.0], &[-2.0]).unwrap(), 0.0);
        assert!(gamma_ratio(&[-2.0], &[1.0]).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(2.0, 3), 24.0);
        assert_eq!(pochhammer(0.5, 2), 0.75);
    }
}
