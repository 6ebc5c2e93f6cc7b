//! The weighted Bergman space `H_alpha` of entire functions with weight
//! `exp(-|z|^alpha)`, and the derivative `D` acting on it as a weighted
//! backward shift in the orthonormal monomial basis `u_n = c_n z^n`.

use std::f64::consts::{LN_2, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::opmodel::{classify_with_tail, least_squares_slope, DiagonalOperator, IdealClass, SetKind, TailModel};
use crate::quad::integrate;
use crate::special::{ln_gamma, ln_gamma_ratio};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BergmanParams {
    alpha: f64,
}

impl BergmanParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Domain(format!("alpha must lie in (0, 1], got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `lim phi(t)/t` for `phi(t) = t^alpha`: the radius of the spectrum of `D`.
    pub fn a(&self) -> f64 {
        if self.alpha == 1.0 {
            1.0
        } else {
            0.0
        }
    }

    /// The determinant constructions are only set up for `alpha < 1/2`.
    pub fn supports_determinants(&self) -> bool {
        self.alpha < 0.5
    }
}

/// `ln ||z^n||^2`.
pub fn log_weight_norm_sq(n: u64, alpha: f64) -> Result<f64> {
    BergmanParams::new(alpha)?;
    let x = 2.0 / alpha * (n as f64 + 1.0);
    Ok((TAU / alpha).ln() - x * LN_2 + ln_gamma(x))
}

/// `||z^n||^2 = (2 pi / alpha) 2^{-(2/alpha)(n+1)} Gamma((2/alpha)(n+1))`.
pub fn weight_norm_sq(n: u64, alpha: f64) -> Result<f64> {
    let l = log_weight_norm_sq(n, alpha)?;
    if l > 709.0 {
        return Err(Error::Range(format!("||z^{n}||^2 overflows for alpha = {alpha} (log {l})")));
    }
    Ok(l.exp())
}

/// `integral_0^inf x^{s-1} e^{-x} dx` by quadrature, returned as
/// `(log scale, integral of the scaled integrand)`.
fn gamma_integral(s: f64, tol: f64) -> Result<(f64, f64)> {
    // the integrand peaks at x = s - 1 (s >= 2 here)
    let peak = (s - 1.0).max(1.0);
    let log_peak = (s - 1.0) * peak.ln() - peak;
    let f = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            ((s - 1.0) * x.ln() - x - log_peak).exp()
        }
    };
    // tail beyond X is at most X^{s-1} e^{-X} / (1 - (s-1)/X)
    let mut upper = 2.0 * peak + 20.0;
    loop {
        let bound = (s - 1.0) * upper.ln() - upper - log_peak - (1.0 - (s - 1.0) / upper).ln();
        if bound < (tol / 10.0).ln() {
            break;
        }
        upper *= 1.5;
    }
    // split at the peak so the panels resolve it
    let left = integrate(f, 0.0, peak, tol / 4.0)?;
    let right = integrate(f, peak, upper, tol / 4.0)?;
    Ok((log_peak, left + right))
}

/// `2 pi integral_0^inf r^{2n+1} exp(-2 r^alpha) dr` by adaptive quadrature
/// after the substitution `x = 2 r^alpha`. `tol` is relative.
pub fn weight_norm_sq_quadrature(n: u64, alpha: f64, tol: f64) -> Result<f64> {
    radial_moment(2 * n + 1, alpha, tol).map(|m| TAU * m)
}

/// `integral_0^inf r^k exp(-2 r^alpha) dr`, relative tolerance `tol`.
fn radial_moment(k: u64, alpha: f64, tol: f64) -> Result<f64> {
    BergmanParams::new(alpha)?;
    if !(tol > 0.0) {
        return Err(Error::Invalid("quadrature tolerance must be positive".into()));
    }
    // r^k dr = (1/(2 alpha)) (x/2)^{s-1} dx with s = (k+1)/alpha
    let s = (k as f64 + 1.0) / alpha;
    let (log_scale, scaled) = gamma_integral(s, tol)?;
    let log_value = log_scale + (1.0 - s) * LN_2 - (2.0 * alpha).ln();
    if log_value > 709.0 {
        return Err(Error::Range(format!("moment r^{k} overflows")));
    }
    Ok(scaled * log_value.exp())
}

/// `(z^n, z^m)` in `H_alpha`, with the angular integral done by the
/// trapezoid rule and the radial one by Gauss-Kronrod.
pub fn monomial_inner_product_quadrature(n: u32, m: u32, alpha: f64, tol: f64) -> Result<Complex64> {
    let k = n.abs_diff(m) as usize;
    let panels = (2 * k + 16).next_power_of_two();
    let mut angular = Complex64::new(0.0, 0.0);
    for j in 0..panels {
        let theta = TAU * j as f64 / panels as f64;
        angular += Complex64::from_polar(1.0, (n as f64 - m as f64) * theta);
    }
    angular *= TAU / panels as f64;
    Ok(angular * radial_moment((n + m + 1) as u64, alpha, tol)?)
}

/// Normalizing constants `c_n = ||z^n||^{-1}` in log form.
pub fn log_basis_constant(n: u64, alpha: f64) -> Result<f64> {
    Ok(-0.5 * log_weight_norm_sq(n, alpha)?)
}

fn shift_weight(alpha: f64, n: usize) -> f64 {
    let h = 2.0 / alpha;
    let x = h * (n as f64 + 1.0);
    let log_sq = h * LN_2 + 2.0 * (n as f64 + 1.0).ln() - ln_gamma_ratio(x, h);
    (0.5 * log_sq).exp()
}

/// Backward-shift weights `gamma_0 .. gamma_{N-1}`,
/// `gamma_n^2 = 2^{2/alpha} (n+1)^2 Gamma(2(n+1)/alpha) / Gamma(2(n+2)/alpha)`.
pub fn shift_weights(params: BergmanParams, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::Invalid("need at least one shift weight".into()));
    }
    Ok((0..n).map(|k| shift_weight(params.alpha, k)).collect())
}

/// `gamma_n = (n+1) c_{n+1} / c_n` from the basis constants. Agrees with
/// [`shift_weights`] but loses relative accuracy proportional to
/// `ln Gamma((2/alpha)(n+2))` through the log-norm difference.
pub fn shift_weight_via_norms(params: BergmanParams, n: usize) -> Result<f64> {
    let a = params.alpha;
    let lc0 = log_basis_constant(n as u64, a)?;
    let lc1 = log_basis_constant(n as u64 + 1, a)?;
    Ok((n as f64 + 1.0) * (lc1 - lc0).exp())
}

/// Least-squares slope of `ln gamma_n` against `ln n` over `n_lo..=n_hi`;
/// tends to `1 - 1/alpha`.
pub fn gamma_asymptotic_fit(params: BergmanParams, n_lo: usize, n_hi: usize) -> Result<f64> {
    if n_lo < 10 || n_lo >= n_hi {
        return Err(Error::Invalid(format!("fit window {n_lo}..={n_hi} needs 10 <= lo < hi")));
    }
    let a = params.alpha;
    Ok(least_squares_slope(
        (n_lo..=n_hi).map(|n| ((n as f64).ln(), shift_weight(a, n).ln())),
    ))
}

/// `ln(n! r^{-n} e^{r^alpha})`, the derivative bound at a given radius.
pub fn log_derivative_bound_at(n: u32, params: BergmanParams, r: f64) -> f64 {
    ln_gamma(n as f64 + 1.0) - n as f64 * r.ln() + r.powf(params.alpha)
}

/// Radius minimizing the bound: `alpha r^alpha = n`.
pub fn optimal_radius(n: u32, params: BergmanParams) -> f64 {
    (n as f64 / params.alpha).powf(1.0 / params.alpha)
}

/// `min_r n! r^{-n} e^{r^alpha}`, an upper bound for `||D^n||` on `H_alpha`.
pub fn derivative_norm_bound(n: u32, params: BergmanParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::Invalid("derivative order must be positive".into()));
    }
    let l = log_derivative_bound_at(n, params, optimal_radius(n, params));
    if l > 709.0 {
        return Err(Error::Range(format!("bound for D^{n} overflows")));
    }
    Ok(l.exp())
}

/// `D` truncated to `span(u_0..u_N)`: an `(N+1)`-square matrix whose only
/// nonzero entries are `(n, n+1) = gamma_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftTruncation {
    params: BergmanParams,
    gamma: Vec<f64>,
}

impl ShiftTruncation {
    pub fn new(params: BergmanParams, n: usize) -> Result<Self> {
        Ok(Self {
            params,
            gamma: shift_weights(params, n)?,
        })
    }

    pub fn params(&self) -> BergmanParams {
        self.params
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Truncation size `N`; the matrix is `(N+1) x (N+1)`.
    pub fn size(&self) -> usize {
        self.gamma.len()
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let n = self.gamma.len();
        let mut m = DMatrix::zeros(n + 1, n + 1);
        for (i, g) in self.gamma.iter().enumerate() {
            m[(i, i + 1)] = *g;
        }
        m
    }

    /// The adjoint: a weighted forward shift with the same weights.
    pub fn adjoint_matrix(&self) -> DMatrix<f64> {
        self.matrix().transpose()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (i, g) in self.gamma.iter().enumerate().take(v.len().saturating_sub(1)) {
            out[i] = g * v[i + 1];
        }
        out
    }

    pub fn apply_adjoint(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (i, g) in self.gamma.iter().enumerate().take(v.len().saturating_sub(1)) {
            out[i + 1] = g * v[i];
        }
        out
    }

    /// `||T^k||`. The singular values of `T^k` are the products of `k`
    /// consecutive weights, so the norm is the largest such product.
    pub fn power_norm(&self, k: usize) -> f64 {
        if k == 0 {
            return 1.0;
        }
        if k > self.gamma.len() {
            return 0.0;
        }
        let logs: Vec<f64> = self.gamma.iter().map(|g| g.ln()).collect();
        let mut window: f64 = logs[..k].iter().sum();
        let mut best = window;
        for i in k..logs.len() {
            window += logs[i] - logs[i - k];
            best = best.max(window);
        }
        best.exp()
    }

    /// `||D (I - P_M)|| = sup_{m >= M} gamma_m` on the truncation.
    pub fn tail_sup(&self, m: usize) -> f64 {
        self.gamma[m.min(self.gamma.len())..]
            .iter()
            .fold(0.0, |acc: f64, g| acc.max(*g))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerNormRow {
    pub k: usize,
    pub norm: f64,
    pub bound: f64,
    /// `||T^k||^{1/k}`, the finite-size proxy for the spectral radius.
    pub root: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationReport {
    pub alpha: f64,
    pub n: usize,
    pub rows: Vec<PowerNormRow>,
    /// `(M, sup_{m >= M} gamma_m)` pairs.
    pub tail_sups: Vec<(usize, f64)>,
    pub bound_holds: bool,
    pub roots_decreasing: bool,
}

pub fn truncation_norm_checks(tr: &ShiftTruncation, k_max: usize) -> Result<TruncationReport> {
    if k_max == 0 {
        return Err(Error::Invalid("k_max must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let norm = tr.power_norm(k);
        let bound = derivative_norm_bound(k as u32, tr.params)?;
        rows.push(PowerNormRow {
            k,
            norm,
            bound,
            root: norm.powf(1.0 / k as f64),
        });
    }
    let n = tr.size();
    let mut tail_sups = Vec::new();
    let mut m = 1;
    while m < n {
        tail_sups.push((m, tr.tail_sup(m)));
        m *= 2;
    }
    tail_sups.push((n - 1, tr.tail_sup(n - 1)));
    Ok(TruncationReport {
        alpha: tr.params.alpha,
        n,
        bound_holds: rows.iter().all(|r| r.norm <= r.bound),
        roots_decreasing: rows.windows(2).all(|w| w[1].root < w[0].root),
        rows,
        tail_sups,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationReport {
    /// Monomial coefficients of `e^{-sD} f` computed through the truncation.
    pub via_operator: Vec<Complex64>,
    /// Monomial coefficients of `f(z - s)` by the binomial theorem.
    pub via_binomial: Vec<Complex64>,
    /// Largest coefficient difference over `max(1, max |binomial coeff|)`.
    pub discrepancy: f64,
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Applies `exp(-s T)` to `f = sum a_j z^j` expressed in the `u_n` basis and
/// compares with `f(z - s)`.
pub fn translation_check(tr: &ShiftTruncation, s: Complex64, poly_coeffs: &[Complex64]) -> Result<TranslationReport> {
    let d = poly_coeffs.len();
    if d == 0 {
        return Err(Error::Invalid("empty polynomial".into()));
    }
    if d > tr.size() {
        return Err(Error::Invalid(format!(
            "degree {} needs a truncation larger than N = {}",
            d - 1,
            tr.size()
        )));
    }
    let alpha = tr.params.alpha;
    let log_c: Vec<f64> = (0..d as u64).map(|j| log_basis_constant(j, alpha)).collect::<Result<_>>()?;
    // the leading block is invariant under T, so exp acts on it exactly
    let block = DMatrix::<Complex64>::from_fn(d, d, |i, j| {
        if j == i + 1 {
            Complex64::new(-tr.gamma[i], 0.0) * s
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let e = block.exp();
    let b = nalgebra::DVector::from_iterator(d, (0..d).map(|j| poly_coeffs[j] / log_c[j].exp()));
    let moved = e * b;
    let via_operator: Vec<Complex64> = (0..d).map(|i| moved[i] * log_c[i].exp()).collect();

    let mut via_binomial = vec![Complex64::new(0.0, 0.0); d];
    for (j, a) in poly_coeffs.iter().enumerate() {
        for (i, slot) in via_binomial.iter_mut().enumerate().take(j + 1) {
            *slot += a * binomial(j, i) * (-s).powu((j - i) as u32);
        }
    }
    let scale = via_binomial.iter().fold(1.0f64, |m, c| m.max(c.norm()));
    let discrepancy = via_operator
        .iter()
        .zip(&via_binomial)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()))
        / scale;
    Ok(TranslationReport {
        via_operator,
        via_binomial,
        discrepancy,
    })
}

/// Trace-ideal membership of `D` from its singular values `gamma_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftIdealReport {
    pub alpha: f64,
    pub p: u32,
    /// `-slope` of the fitted power law.
    pub kappa: f64,
    pub partial_sum: f64,
    pub in_ideal: bool,
}

/// Certifies `D` in `J_p` by fitting the tail of `gamma_n` over the last
/// decade of `0..n_max` and classifying under the fitted power law.
pub fn shift_ideal_certify(params: BergmanParams, p: u32, n_max: usize) -> Result<ShiftIdealReport> {
    if n_max < 100 {
        return Err(Error::Invalid("n_max must be at least 100".into()));
    }
    let gamma = shift_weights(params, n_max)?;
    let slope = gamma_asymptotic_fit(params, n_max / 10, n_max - 1)?;
    let kappa = -slope;
    let partial_sum = gamma.iter().map(|g| g.powi(p as i32)).sum();
    let op = DiagonalOperator::from_diagonal(
        gamma.into_iter().map(|g| Complex64::new(g, 0.0)).collect(),
        SetKind::Zeros,
    )?;
    let class: IdealClass = classify_with_tail(&op, TailModel::PowerLaw { kappa }, p, 0.0)?;
    Ok(ShiftIdealReport {
        alpha: params.alpha,
        p,
        kappa,
        partial_sum,
        in_ideal: class.in_ideal(p),
    })
}

/// `(D D^* 1, D^* D 1)` evaluated on `u_0`: returns the `u_0` coefficient of
/// the first and the norm of the second (which vanishes).
pub fn non_normality_witness(tr: &ShiftTruncation) -> (f64, f64) {
    let mut e0 = vec![0.0; tr.size() + 1];
    e0[0] = 1.0;
    let dd_star = tr.apply(&tr.apply_adjoint(&e0));
    let d_star_d = tr.apply_adjoint(&tr.apply(&e0));
    (dd_star[0], d_star_d.iter().map(|x| x * x).sum::<f64>().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn params(a: f64) -> BergmanParams {
        BergmanParams::new(a).unwrap()
    }

    #[test]
    fn params_validate() {
        assert!(BergmanParams::new(0.0).is_err());
        assert!(BergmanParams::new(1.2).is_err());
        assert_eq!(params(1.0).a(), 1.0);
        assert_eq!(params(0.4).a(), 0.0);
        assert!(params(0.4).supports_determinants());
        assert!(!params(0.5).supports_determinants());
    }

    #[test]
    fn norm_examples() {
        assert!((weight_norm_sq(0, 1.0).unwrap() / (PI / 2.0) - 1.0).abs() < 1e-14);
        assert!((weight_norm_sq(1, 1.0).unwrap() / (0.75 * PI) - 1.0).abs() < 1e-14);
        assert!((weight_norm_sq(0, 0.5).unwrap() / (1.5 * PI) - 1.0).abs() < 1e-14);
        let v = weight_norm_sq(3, 0.5).unwrap();
        assert!((v / 250_743_419.665_312_24 - 1.0).abs() < 1e-13);
        assert!(matches!(weight_norm_sq(400, 0.3), Err(Error::Range(_))));
    }

    #[test]
    fn quadrature_examples() {
        let q = weight_norm_sq_quadrature(0, 1.0, 1e-10).unwrap();
        assert!((q - PI / 2.0).abs() < 1e-10);
        let q = weight_norm_sq_quadrature(3, 0.5, 1e-8).unwrap();
        assert!((q / weight_norm_sq(3, 0.5).unwrap() - 1.0).abs() < 1e-7);
        let q = weight_norm_sq_quadrature(0, 0.3, 1e-8).unwrap();
        assert!((q / 80.201_144_976_450_47 - 1.0).abs() < 1e-7);
    }

    #[test]
    fn monomials_orthogonal() {
        for n in 0..=4u32 {
            for m in 0..=4u32 {
                let ip = monomial_inner_product_quadrature(n, m, 0.5, 1e-10).unwrap();
                let scale = (weight_norm_sq(n as u64, 0.5).unwrap() * weight_norm_sq(m as u64, 0.5).unwrap()).sqrt();
                if n == m {
                    assert!((ip.re / scale - 1.0).abs() < 1e-8);
                } else {
                    assert!(ip.norm() / scale < 1e-8, "{n} {m} {ip}");
                }
            }
        }
    }

    #[test]
    fn weight_examples() {
        let g = shift_weights(params(1.0), 2).unwrap();
        assert!((g[0] - 0.816_496_580_927_726).abs() < 1e-15);
        assert!((g[1] - 0.894_427_190_999_915_9).abs() < 1e-15);
        let g = shift_weights(params(0.4), 8).unwrap();
        assert!((g[0] / 0.046_004_370_622_823_61 - 1.0).abs() < 1e-13);
        assert!((g[7] / 0.003_964_220_845_496_692 - 1.0).abs() < 1e-13);
        let big = shift_weight(0.4, 1000);
        assert!((big / 3.192_016_528_178_979e-6 - 1.0).abs() < 1e-13);
        for n in 0..50 {
            let a = shift_weight(0.4, n);
            let b = shift_weight_via_norms(params(0.4), n).unwrap();
            assert!((a / b - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn asymptotic_slopes() {
        let s = gamma_asymptotic_fit(params(0.5), 1000, 10_000).unwrap();
        assert!((s + 1.0).abs() < 0.02, "{s}");
        let s = gamma_asymptotic_fit(params(1.0), 1000, 10_000).unwrap();
        assert!(s.abs() < 0.02, "{s}");
        let s = gamma_asymptotic_fit(params(0.4), 1000, 10_000).unwrap();
        assert!((s + 1.5).abs() < 0.03, "{s}");
    }

    #[test]
    fn derivative_bound_examples() {
        assert!((derivative_norm_bound(1, params(1.0)).unwrap() - std::f64::consts::E).abs() < 1e-14);
        assert_eq!(optimal_radius(2, params(0.5)), 16.0);
        let b = derivative_norm_bound(2, params(0.5)).unwrap();
        assert!((b - 0.426_548_047_133_939_4).abs() < 1e-14);
    }

    #[test]
    fn stationary_radius_is_minimum() {
        // golden-section search on log r
        for &(n, a) in &[(1u32, 1.0), (3, 0.5), (7, 0.3), (20, 0.4)] {
            let p = params(a);
            let f = |t: f64| log_derivative_bound_at(n, p, t.exp());
            let (mut lo, mut hi) = (-5.0f64, 60.0f64);
            let g = 0.5 * (5f64.sqrt() - 1.0);
            for _ in 0..200 {
                let x1 = hi - g * (hi - lo);
                let x2 = lo + g * (hi - lo);
                if f(x1) < f(x2) {
                    hi = x2;
                } else {
                    lo = x1;
                }
            }
            let best = f(0.5 * (lo + hi));
            let closed = f(optimal_radius(n, p).ln());
            assert!((best - closed).abs() < 1e-9, "{n} {a}");
        }
    }

    #[test]
    fn power_norm_matches_svd() {
        let tr = ShiftTruncation::new(params(0.4), 40).unwrap();
        let m = tr.matrix();
        let mut pow = DMatrix::<f64>::identity(41, 41);
        for k in 1..=6 {
            pow = &pow * &m;
            let svd = pow.clone().svd(false, false);
            let top = svd.singular_values.max();
            assert!((top / tr.power_norm(k) - 1.0).abs() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn truncation_report() {
        let tr = ShiftTruncation::new(params(0.4), 2000).unwrap();
        let rep = truncation_norm_checks(&tr, 20).unwrap();
        assert!(rep.bound_holds);
        assert!(rep.roots_decreasing);
        let sups: Vec<f64> = rep.tail_sups.iter().map(|t| t.1).collect();
        assert!(sups.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn adjoint_and_witness() {
        let tr = ShiftTruncation::new(params(0.4), 6).unwrap();
        assert_eq!(tr.adjoint_matrix(), tr.matrix().transpose());
        let v: Vec<f64> = (0..7).map(|i| i as f64 - 2.5).collect();
        let dense = tr.adjoint_matrix() * nalgebra::DVector::from_vec(v.clone());
        assert_eq!(dense.as_slice(), tr.apply_adjoint(&v).as_slice());
        let (a, b) = non_normality_witness(&tr);
        assert!((a - tr.gamma()[0].powi(2)).abs() < 1e-16);
        assert_eq!(b, 0.0);
    }

    #[test]
    fn translation_examples() {
        let tr = ShiftTruncation::new(params(0.5), 10).unwrap();
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let r = translation_check(&tr, c(3.0, -1.0), &[c(1.0, 0.0)]).unwrap();
        assert_eq!(r.via_operator, vec![c(1.0, 0.0)]);
        let r = translation_check(&tr, c(1.0, 0.0), &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(r.discrepancy <= 1e-12, "{}", r.discrepancy);
        assert!((r.via_operator[0] - c(-1.0, 0.0)).norm() < 1e-12);
        let cubic = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        let r = translation_check(&tr, c(2.0, 1.0), &cubic).unwrap();
        assert!(r.discrepancy <= 1e-10, "{}", r.discrepancy);
        assert!(translation_check(&tr, c(1.0, 0.0), &[c(1.0, 0.0); 12]).is_err());
    }

    #[test]
    fn ideal_thresholds() {
        for &a in &[0.35, 0.45, 0.55, 0.7] {
            for p in 1..=3u32 {
                let rep = shift_ideal_certify(params(a), p, 20_000).unwrap();
                let expect = a < p as f64 / (p as f64 + 1.0);
                assert_eq!(rep.in_ideal, expect, "alpha={a} p={p} kappa={}", rep.kappa);
            }
        }
    }
}
