//! Scalar kernels shared by every determinant in the crate: Weierstrass
//! elementary factors, the single-eigenvalue factor of a regularized
//! determinant, and compensated summation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest real part we feed to `exp` before calling it an overflow.
const EXP_LIMIT: f64 = 709.0;

/// Below this modulus the logarithmic kernels switch to their tail series.
const SERIES_RADIUS: f64 = 0.25;

/// `log(1 + w)` on the principal branch without cancellation for small `w`.
pub fn ln_1p(w: Complex64) -> Complex64 {
    if w.norm() > 0.5 {
        // 1 + w is formed exactly enough here; the series form would cancel
        return (Complex64::new(1.0, 0.0) + w).ln();
    }
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

fn checked_exp(x: Complex64, what: &str) -> Result<Complex64> {
    if !x.re.is_finite() || !x.im.is_finite() || x.re > EXP_LIMIT {
        return Err(Error::Range(format!("exponent {x} overflows in {what}")));
    }
    Ok(x.exp())
}

/// `sum_{j >= from} sign(j) * w^j / j`, where the sign alternates when
/// `alternating` is set (`(-1)^(j+1)`), for `|w| < 1`.
fn log_tail_series(w: Complex64, from: u32, alternating: bool) -> Complex64 {
    let mut pow = w.powu(from);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut j = from;
    loop {
        let sign = if alternating && j % 2 == 0 { -1.0 } else { 1.0 };
        let term = pow * (sign / j as f64);
        acc += term;
        if term.norm() <= 1e-18 * acc.norm().max(f64::MIN_POSITIVE) || j > from + 200 {
            break;
        }
        pow *= w;
        j += 1;
    }
    acc
}

/// Weierstrass elementary factor `E_n(z) = (1 - z) exp(z + z^2/2 + ... + z^n/n)`.
///
/// For `|z| <= 1/2` the value is formed as `exp(log(1 - z) + sum_{j<=n} z^j/j)`,
/// with the exponent summed as its convergent tail `-sum_{j>n} z^j/j` so
/// nothing cancels.
pub fn elementary_factor(n: u32, z: Complex64) -> Result<Complex64> {
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0) - z);
    }
    if z.norm() <= 0.5 {
        let exponent = -log_tail_series(z, n + 1, false);
        return checked_exp(exponent, "elementary_factor");
    }
    let mut poly = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for j in 1..=n {
        pow *= z;
        poly += pow / j as f64;
    }
    let lin = Complex64::new(1.0, 0.0) - z;
    if lin == Complex64::new(0.0, 0.0) {
        return Ok(lin);
    }
    Ok(lin * checked_exp(poly, "elementary_factor")?)
}

/// `sum_{j=1}^{p-1} (-1)^j w^j / j`, the exponential correction of `det_p`.
fn correction_poly(p: u32, w: Complex64) -> Complex64 {
    let mut poly = Complex64::new(0.0, 0.0);
    let mut pow = Complex64::new(1.0, 0.0);
    for j in 1..p {
        pow *= w;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        poly += pow * (sign / j as f64);
    }
    poly
}

/// Single-eigenvalue factor of `det_p(I + mu A)`:
/// `(1 + mu lambda) exp(sum_{j<p} (-1)^j (lambda mu)^j / j)`.
pub fn regdet_term(p: u32, lambda: Complex64, mu: Complex64) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::Invalid("determinant order must be at least 1".into()));
    }
    let w = mu * lambda;
    let lin = Complex64::new(1.0, 0.0) + w;
    if p == 1 || lin == Complex64::new(0.0, 0.0) {
        return Ok(lin);
    }
    if w.norm() < SERIES_RADIUS {
        return checked_exp(log_tail_series(w, p, true), "regdet_term");
    }
    Ok(lin * checked_exp(correction_poly(p, w), "regdet_term")?)
}

/// Principal logarithm of [`regdet_term`]. Errors with
/// [`Error::ZeroFactor`] (index 0) when `1 + mu lambda = 0`.
pub fn regdet_log_term(p: u32, lambda: Complex64, mu: Complex64) -> Result<Complex64> {
    if p == 0 {
        return Err(Error::Invalid("determinant order must be at least 1".into()));
    }
    let w = mu * lambda;
    if Complex64::new(1.0, 0.0) + w == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroFactor { index: 0 });
    }
    let v = if w.norm() < SERIES_RADIUS {
        log_tail_series(w, p, true)
    } else {
        ln_1p(w) + correction_poly(p, w)
    };
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::Range(format!("log term overflows for w = {w}")));
    }
    Ok(v)
}

/// Neumaier-compensated accumulator, applied to each component separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

#[inline]
fn two_sum_step(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: Complex64) {
        two_sum_step(&mut self.sum.re, &mut self.comp.re, x.re);
        two_sum_step(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    /// Folds another accumulator in, keeping both of its parts.
    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// Compensated sum of `terms` in the given order.
pub fn ordered_compensated_sum(terms: &[Complex64]) -> Complex64 {
    let mut acc = CompensatedSum::new();
    for &t in terms {
        acc.add(t);
    }
    acc.value()
}
