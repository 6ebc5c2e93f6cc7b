//! Adaptive 7/15-point Gauss-Kronrod quadrature on a finite interval.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 20_000;

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Integral of `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// Intervals are bisected until each Kronrod/Gauss difference is below its
/// share of the tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    let mut stack = vec![(a, b)];
    let mut total = 0.0;
    let mut used = 0;
    let width = b - a;
    while let Some((lo, hi)) = stack.pop() {
        used += 1;
        if used > MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "no convergence on [{a}, {b}] after {MAX_INTERVALS} panels"
            )));
        }
        let (val, err) = gk15(&f, lo, hi);
        if !val.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{lo}, {hi}]")));
        }
        let share = abs_tol * (hi - lo) / width;
        if err <= share || hi - lo < 1e-12 * width {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_exact() {
        let v = integrate(|x| x.powi(9) - 3.0 * x * x, 0.0, 2.0, 1e-14).unwrap();
        assert!((v - (102.4 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn exponential_and_oscillatory() {
        let v = integrate(|x| (-x).exp(), 0.0, 60.0, 1e-13).unwrap();
        assert!((v - (1.0 - (-60.0f64).exp())).abs() < 1e-13);
        let v = integrate(|x| (10.0 * x).sin(), 0.0, std::f64::consts::PI, 1e-13).unwrap();
        assert!(v.abs() < 1e-13);
    }

    #[test]
    fn sqrt_endpoint() {
        // integral of sqrt(x) on [0,1] = 2/3
        let v = integrate(f64::sqrt, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }
}
