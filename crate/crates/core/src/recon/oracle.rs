//! Reference values for `Gamma`, `zeta` and `xi`, built from classical
//! formulas that share no code with the determinant reconstructions.
//!
//! Accuracy is at least 1e-10 relative for `|s| <= 20` and `|Im s| <= 50`.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// `Gamma(z)` by the Lanczos approximation, with reflection for `Re z < 1/2`.
pub fn gamma_oracle(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("Gamma has a pole at {z}")));
    }
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(c(PI, 0.0) / (s * gamma_oracle(c(1.0, 0.0) - z)?));
    }
    let z = z - 1.0;
    let mut x = c(LANCZOS[0], 0.0);
    for (i, coef) in LANCZOS.iter().enumerate().skip(1) {
        x += *coef / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * x)
}

/// `exp(w) - 1` without cancellation near `w = 0`.
fn expm1(w: Complex64) -> Complex64 {
    let half = (0.5 * w.im).sin();
    c(w.re.exp_m1() * w.im.cos() - 2.0 * half * half, w.re.exp() * w.im.sin())
}

/// Dirichlet eta `sum (-1)^{k+1} k^{-s}` by Borwein's alternating-series
/// acceleration, for `Re s >= 0`.
pub(crate) fn eta_borwein(s: Complex64) -> Complex64 {
    let t = s.im.abs();
    // error ~ 3 (1 + 2|t|) e^{pi |t| / 2} / (3 + sqrt 8)^n
    let digits = 17.0 + t * PI / 2.0 / 10f64.ln() + (3.0 * (1.0 + 2.0 * t)).log10();
    let n = (digits / (3.0 + 8f64.sqrt()).log10()).ceil() as usize + 2;
    // d_k = n sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 0.0;
    for i in 0..=n {
        acc += term;
        d.push(acc);
        let fi = i as f64;
        let nf = n as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    let dn = d[n];
    let mut sum = c(0.0, 0.0);
    for (k, dk) in d.iter().enumerate().take(n) {
        let weight = 1.0 - dk / dn;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * weight * (-s * ((k + 1) as f64).ln()).exp();
    }
    sum
}

/// `zeta(s)` via `eta(s) / (1 - 2^{1-s})` for `Re s >= 0`, and the
/// functional equation for `Re s < 0`.
pub fn zeta_oracle(s: Complex64) -> Result<Complex64> {
    if s == c(1.0, 0.0) {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    if s.re < 0.0 {
        if s.im == 0.0 && s.re.fract() == 0.0 && (s.re as i64) % 2 == 0 {
            return Ok(c(0.0, 0.0));
        }
        let one_minus = c(1.0, 0.0) - s;
        let pre = (s * LN_2 + (s - 1.0) * PI.ln()).exp() * (s * (PI / 2.0)).sin();
        return Ok(pre * gamma_oracle(one_minus)? * zeta_oracle(one_minus)?);
    }
    let denom = -expm1((c(1.0, 0.0) - s) * LN_2);
    if denom.norm() < 1e-12 {
        return Err(Error::Domain(format!("eta route degenerates at {s}")));
    }
    Ok(eta_borwein(s) / denom)
}

/// `xi(s) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s)`, entire.
///
/// Evaluated as `pi^{-s/2} Gamma(s/2 + 1) (s-1) zeta(s)` for `Re s >= 1/2`
/// (the removable singularity at `s = 1` handled through `eta`), and by
/// `xi(s) = xi(1 - s)` otherwise.
pub fn xi_oracle(s: Complex64) -> Result<Complex64> {
    if s.re < 0.5 {
        return xi_oracle(c(1.0, 0.0) - s);
    }
    let w = (c(1.0, 0.0) - s) * LN_2;
    // (s - 1) / (1 - 2^{1-s}) = (w / ln 2) / expm1(w)
    let ratio = if w.norm() < 1e-4 {
        (c(1.0, 0.0) - w / 2.0 + w * w / 12.0) / LN_2
    } else {
        w / LN_2 / expm1(w)
    };
    let pre = (-s / 2.0 * PI.ln()).exp() * gamma_oracle(s / 2.0 + 1.0)?;
    Ok(pre * ratio * eta_borwein(s))
}
