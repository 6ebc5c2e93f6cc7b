//! Real log-Gamma kernels for large arguments.

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this the Stirling series is reached by upward recurrence.
const STIRLING_MIN: f64 = 15.0;

// B_{2k} / (2k (2k-1)) for k = 1..7
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

fn stirling_series(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        acc += c * pow;
        pow *= inv2;
    }
    acc
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma needs x > 0, got {x}");
    if x < STIRLING_MIN {
        // x (x+1) ... stays far below overflow for x < 15
        let k = (STIRLING_MIN - x).ceil() as usize;
        let mut prod = 1.0;
        let mut y = x;
        for _ in 0..k {
            prod *= y;
            y += 1.0;
        }
        return ln_gamma(y) - prod.ln();
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_series(x)
}

/// `ln Gamma(x + h) - ln Gamma(x)` for `x > 0`, `h >= 0`, without forming
/// either (possibly huge) logarithm.
pub fn ln_gamma_ratio(x: f64, h: f64) -> f64 {
    assert!(x > 0.0 && h >= 0.0, "ln_gamma_ratio needs x > 0, h >= 0");
    if x < STIRLING_MIN {
        let k = (STIRLING_MIN - x).ceil() as usize;
        let mut shift = 0.0;
        for i in 0..k {
            shift += (h / (x + i as f64)).ln_1p();
        }
        return ln_gamma_ratio(x + k as f64, h) - shift;
    }
    (x - 0.5) * (h / x).ln_1p() + h * (x + h).ln() - h + stirling_series(x + h)
        - stirling_series(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..25 {
            // ln Gamma(n) = ln (n-1)!
            assert!((ln_gamma(n as f64) - f.ln()).abs() < 2e-14 * f.ln().abs().max(1.0), "n={n}");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integer() {
        // ln Gamma(1/2) = ln sqrt(pi)
        assert!((ln_gamma(0.5) - 0.572_364_942_924_700_1).abs() < 1e-15);
    }

    #[test]
    fn ratio_matches_difference() {
        for &(x, h) in &[(0.3, 2.5), (4.0, 5.0), (100.0, 6.666), (5000.0, 5.0), (2.0e5, 2.857)] {
            let direct = ln_gamma(x + h) - ln_gamma(x);
            let r = ln_gamma_ratio(x, h);
            assert!((r - direct).abs() < 1e-13 * ln_gamma(x + h).abs().max(1.0), "{x} {h}");
        }
        // Gamma(x+1)/Gamma(x) = x exactly
        for &x in &[0.7, 3.0, 17.5, 1234.5, 9.9e4] {
            assert!((ln_gamma_ratio(x, 1.0) - f64::ln(x)).abs() < 1e-15 * f64::ln(x).abs().max(1.0) * 4.0);
        }
    }
}
