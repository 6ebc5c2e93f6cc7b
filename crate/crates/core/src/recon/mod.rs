//! Reconstruction of functions from their zeros and poles through
//! determinants of diagonal operators: rational functions, `Gamma`, the
//! Euler product, `xi`, `zeta`, and Hadamard products of finite order.

pub mod dataset;
pub mod oracle;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::CompensatedSum;
use crate::opmodel::{DiagonalOperator, SetKind, TailModel, ZeroMultiset};
use crate::regdet::{det_fredholm, det_p, Pairing, RegDetRequest};
use crate::special::EULER_GAMMA;

pub use dataset::{load_zero_dataset, parse_zero_dataset, ZeroDataset};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// A reconstructed value with its estimated relative truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reconstruction {
    pub value: Complex64,
    pub tail_estimate: f64,
}

/// `z^k` for integer `k`, by repeated multiplication.
fn int_pow(z: Complex64, k: i32) -> Result<Complex64> {
    if k < 0 && z == ZERO {
        return Err(Error::Pole(format!("z^{k} at z = 0")));
    }
    let p = z.powu(k.unsigned_abs());
    Ok(if k < 0 { p.inv() } else { p })
}

/// `f(z) = z^k g0 det_1(I - z D_zeros) / det_1(I - z D_poles)`.
pub fn rational_reconstruct(
    zeros: &ZeroMultiset,
    poles: &ZeroMultiset,
    k: i32,
    g0: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    let zop = DiagonalOperator::from_zeros(zeros);
    let pop = DiagonalOperator::from_zeros(poles);
    let dp = det_fredholm(&pop, z, pop.len())?;
    if let Some(index) = dp.annihilator {
        return Err(Error::PoleFactor { index });
    }
    let zk = int_pow(z, k)?;
    let dz = det_fredholm(&zop, z, zop.len())?;
    Ok(zk * g0 * dz.value / dp.value)
}

fn rational_det(entries: &[(BigRational, u32)], z: &BigRational) -> Result<(BigRational, Option<usize>)> {
    let mut acc = BigRational::one();
    let mut index = 0;
    for (a, m) in entries {
        if a.is_zero() {
            return Err(Error::Invalid("0 cannot be a zero or pole".into()));
        }
        let factor = BigRational::one() - z / a;
        if factor.is_zero() {
            return Ok((BigRational::zero(), Some(index)));
        }
        for _ in 0..*m {
            acc *= &factor;
        }
        index += *m as usize;
    }
    Ok((acc, None))
}

/// Exact version of [`rational_reconstruct`] for real rational data.
pub fn rational_reconstruct_exact(
    zeros: &[(BigRational, u32)],
    poles: &[(BigRational, u32)],
    k: i32,
    g0: &BigRational,
    z: &BigRational,
) -> Result<BigRational> {
    let (dp, pole) = rational_det(poles, z)?;
    if let Some(index) = pole {
        return Err(Error::PoleFactor { index });
    }
    if k < 0 && z.is_zero() {
        return Err(Error::Pole(format!("z^{k} at z = 0")));
    }
    let zk = num_traits::pow(z.clone(), k.unsigned_abs() as usize);
    let zk = if k < 0 { zk.recip() } else { zk };
    let (dz, _) = rational_det(zeros, z)?;
    Ok(zk * g0 * dz / dp)
}

/// The operator with diagonal `(-1/n)_{n <= N}`, whose `det_2` is the
/// Weierstrass product of `1 / (z Gamma(z))` up to `e^{gamma z}`.
pub fn gamma_operator(n: usize) -> Result<DiagonalOperator> {
    let zeros = ZeroMultiset::simple((1..=n).map(|k| c(-(k as f64), 0.0)), SetKind::Zeros)?;
    Ok(DiagonalOperator::from_zeros(&zeros).with_tail(TailModel::PowerLaw { kappa: 1.0 }))
}

fn gamma_det(op: &DiagonalOperator, z: Complex64) -> Result<crate::regdet::DetValue> {
    det_p(op, &RegDetRequest::new(2, z, op.len()).certified())
}

/// `Gamma(z) = (e^{-gamma z} / z) / det_2(I - z D)` with `D = diag(-1/n)`.
pub fn gamma_reconstruct(z: Complex64, n: usize) -> Result<Reconstruction> {
    gamma_reconstruct_with(&gamma_operator(n)?, z)
}

/// [`gamma_reconstruct`] with a prebuilt [`gamma_operator`].
pub fn gamma_reconstruct_with(op: &DiagonalOperator, z: Complex64) -> Result<Reconstruction> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Pole(format!("Gamma has a pole at {z}")));
    }
    let d = gamma_det(op, z)?;
    let n = op.len() as f64;
    Ok(Reconstruction {
        value: (-EULER_GAMMA * z).exp() / z / d.value,
        tail_estimate: z.norm_sqr() / (2.0 * n),
    })
}

/// Primes up to `bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: usize) -> Vec<usize> {
    if bound < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; bound + 1];
    let mut out = Vec::new();
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        out.push(i);
        let mut j = i * i;
        while j <= bound {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `D_phi` for `phi(z) = 1 - z`: the one-entry operator with diagonal `{1}`.
pub fn phi_operator() -> DiagonalOperator {
    DiagonalOperator::from_zeros(&ZeroMultiset::zeros([ONE]).expect("1 is a valid zero"))
}

/// `det(I - p^{-s} D_phi)^{-1} = (1 - p^{-s})^{-1}`.
pub fn euler_factor(p: usize, s: Complex64) -> Result<Complex64> {
    let t = (-s * (p as f64).ln()).exp();
    Ok(det_fredholm(&phi_operator(), t, 1)?.value.inv())
}

/// `prod_{p <= bound} det(I - p^{-s} D_phi)^{-1}` for `Re s > 1`.
pub fn euler_product_det(s: Complex64, prime_bound: usize) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("Euler product needs Re s > 1, got {s}")));
    }
    if prime_bound < 2 {
        return Err(Error::Invalid("prime bound must be at least 2".into()));
    }
    let op = phi_operator();
    let mut acc = CompensatedSum::new();
    for p in primes_up_to(prime_bound) {
        let t = (-s * (p as f64).ln()).exp();
        let d = det_fredholm(&op, t, 1)?.value;
        acc.add(-d.ln());
    }
    Ok(acc.value().exp())
}

/// `ln 2 pi - 1 - gamma/2`, the linear exponent in the `xi` product.
fn xi_linear() -> f64 {
    (2.0 * PI).ln() - 1.0 - EULER_GAMMA / 2.0
}

/// Operator over the first `n` zero pairs `1/2 +- i t_k` of a dataset.
pub fn xi_operator(data: &ZeroDataset, n: usize) -> Result<DiagonalOperator> {
    Ok(DiagonalOperator::from_zeros(&data.xi_zeros(n)?).with_tail(TailModel::PowerLaw { kappa: 1.0 }))
}

/// Tail of `log det_2` beyond height `t`: the zero density
/// `log(t / 2 pi) / 2 pi` against `|s|^2 / t^2`.
fn xi_tail(s: Complex64, t: f64) -> f64 {
    if t <= 0.0 {
        return f64::INFINITY;
    }
    s.norm_sqr() * ((t / (2.0 * PI)).ln() + 1.0) / (2.0 * PI * t)
}

/// `xi(s) = (1/2) pi^{-s/2} e^{(ln 2 pi - 1 - gamma/2) s} det_2(I - s D_xi)`,
/// truncated to the first `n` zero heights.
pub fn xi_reconstruct(s: Complex64, data: &ZeroDataset, n: usize) -> Result<Reconstruction> {
    xi_reconstruct_with(&xi_operator(data, n)?, s, data.heights().get(n.wrapping_sub(1)).copied())
}

fn xi_reconstruct_with(op: &DiagonalOperator, s: Complex64, last_height: Option<f64>) -> Result<Reconstruction> {
    let req = RegDetRequest::new(2, s, op.len())
        .pairing(Pairing::FunctionalPaired)
        .certified();
    let d = det_p(op, &req)?;
    let prefactor = 0.5 * (-s / 2.0 * PI.ln() + xi_linear() * s).exp();
    let tail_estimate = match last_height {
        _ if s == ZERO => 0.0,
        Some(t) => xi_tail(s, t),
        None => f64::INFINITY,
    };
    Ok(Reconstruction {
        value: prefactor * d.value,
        tail_estimate,
    })
}

/// Truncation sizes for [`zeta_reconstruct`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaTerms {
    pub zeros: usize,
    pub gamma_terms: usize,
}

/// Three-determinant formula
/// `zeta(s) = -(e^{(ln 2 pi - 1) s} / 2) det_2(I - (s/2) D_Gamma) det_2(I - s D_xi) / det_1(I - s D_phi)`.
pub fn zeta_reconstruct(s: Complex64, data: &ZeroDataset, terms: ZetaTerms) -> Result<Reconstruction> {
    if s == ONE {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    data.require(terms.zeros)?;
    let gop = gamma_operator(terms.gamma_terms)?;
    let xop = xi_operator(data, terms.zeros)?;
    zeta_reconstruct_with(&gop, &xop, data.heights().get(terms.zeros.wrapping_sub(1)).copied(), s)
}

fn zeta_reconstruct_with(
    gop: &DiagonalOperator,
    xop: &DiagonalOperator,
    last_height: Option<f64>,
    s: Complex64,
) -> Result<Reconstruction> {
    let half = s / 2.0;
    let g = gamma_det(gop, half)?;
    let xreq = RegDetRequest::new(2, s, xop.len())
        .pairing(Pairing::FunctionalPaired)
        .certified();
    let x = det_p(xop, &xreq)?;
    let pole = det_fredholm(&phi_operator(), s, 1)?;
    let pre = -0.5 * (((2.0 * PI).ln() - 1.0) * s).exp();
    let gamma_tail = half.norm_sqr() / (2.0 * gop.len() as f64);
    let xi_tail = match last_height {
        _ if s == ZERO => 0.0,
        Some(t) => xi_tail(s, t),
        None => f64::INFINITY,
    };
    Ok(Reconstruction {
        value: pre * g.value * x.value / pole.value,
        tail_estimate: gamma_tail + xi_tail,
    })
}

/// Reusable operators for evaluating [`zeta_reconstruct`] and
/// [`xi_reconstruct`] at many points.
#[derive(Debug, Clone)]
pub struct ZetaReconstructor {
    gamma: DiagonalOperator,
    xi: DiagonalOperator,
    last_height: Option<f64>,
}

impl ZetaReconstructor {
    pub fn new(data: &ZeroDataset, terms: ZetaTerms) -> Result<Self> {
        data.require(terms.zeros)?;
        Ok(Self {
            gamma: gamma_operator(terms.gamma_terms)?,
            xi: xi_operator(data, terms.zeros)?,
            last_height: data.heights().get(terms.zeros.wrapping_sub(1)).copied(),
        })
    }

    pub fn zeta(&self, s: Complex64) -> Result<Reconstruction> {
        if s == ONE {
            return Err(Error::Pole("zeta has a pole at s = 1".into()));
        }
        zeta_reconstruct_with(&self.gamma, &self.xi, self.last_height, s)
    }

    pub fn xi(&self, s: Complex64) -> Result<Reconstruction> {
        xi_reconstruct_with(&self.xi, s, self.last_height)
    }

    pub fn gamma(&self, z: Complex64) -> Result<Reconstruction> {
        gamma_reconstruct_with(&self.gamma, z)
    }
}

/// Data of the Hadamard form `f(z) = z^m e^{g(z)} det_{p+1}(I - z D_f)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HadamardData {
    pub zeros: ZeroMultiset,
    /// Order of vanishing at the origin.
    pub m: u32,
    /// Coefficients of `g`, constant term first.
    pub g_coeffs: Vec<Complex64>,
    pub order_lambda: f64,
    /// Growth of `|1/a_n|` beyond the stored zeros.
    pub tail: TailModel,
    pub pairing: Pairing,
    /// Genus of the canonical product when it is below `floor(lambda)`.
    genus: Option<u32>,
}

impl HadamardData {
    pub fn new(zeros: ZeroMultiset, m: u32, g_coeffs: Vec<Complex64>, order_lambda: f64, tail: TailModel) -> Result<Self> {
        if !(order_lambda >= 0.0) || !order_lambda.is_finite() {
            return Err(Error::Invalid(format!("order must be finite and >= 0, got {order_lambda}")));
        }
        let deg = g_coeffs.iter().rposition(|a| *a != ZERO).unwrap_or(0);
        if deg as f64 > order_lambda {
            return Err(Error::Invalid(format!(
                "deg g = {deg} exceeds the order {order_lambda}"
            )));
        }
        Ok(Self {
            zeros,
            m,
            g_coeffs,
            order_lambda,
            tail,
            pairing: Pairing::AsStored,
            genus: None,
        })
    }

    pub fn with_pairing(mut self, pairing: Pairing) -> Self {
        self.pairing = pairing;
        self
    }

    /// Uses `det_{p+1}` with `p` below `floor(lambda)`. Any `p` at least the
    /// convergence exponent of the zeros works; `g` changes accordingly.
    pub fn with_genus(mut self, p: u32) -> Result<Self> {
        if p as f64 > self.order_lambda.floor() {
            return Err(Error::Invalid(format!("genus {p} exceeds floor of the order {}", self.order_lambda)));
        }
        self.genus = Some(p);
        Ok(self)
    }

    /// Genus of the canonical product, `floor(lambda)` unless overridden.
    pub fn p(&self) -> u32 {
        self.genus.unwrap_or(self.order_lambda.floor() as u32)
    }

    /// `sin(pi z) / (pi z)`: zeros `+-1, +-2, ..., +-n`, order 1.
    pub fn sinc(n: usize) -> Result<Self> {
        let zeros = ZeroMultiset::simple(
            (1..=n).flat_map(|k| [c(k as f64, 0.0), c(-(k as f64), 0.0)]),
            SetKind::Zeros,
        )?;
        Self::new(zeros, 0, Vec::new(), 1.0, TailModel::PowerLaw { kappa: 1.0 })
    }

    /// `1 - z`: a single zero, order 0.
    pub fn one_minus_z() -> Result<Self> {
        Self::new(ZeroMultiset::zeros([ONE])?, 0, Vec::new(), 0.0, TailModel::Finite)
    }

    /// `e^z (1 - z)` with `g(z) = z` over the genus-0 product `det_1`.
    pub fn exp_one_minus_z() -> Result<Self> {
        Self::new(ZeroMultiset::zeros([ONE])?, 0, vec![ZERO, ONE], 1.0, TailModel::Finite)?.with_genus(0)
    }

    fn g(&self, z: Complex64) -> Complex64 {
        self.g_coeffs.iter().rev().fold(ZERO, |acc, a| acc * z + a)
    }
}

/// `z^m e^{g(z)} det_{p+1}(I - z D_f)` truncated to `n` zeros.
pub fn hadamard_reconstruct(data: &HadamardData, z: Complex64, n: usize) -> Result<Reconstruction> {
    let op = DiagonalOperator::from_zeros(&data.zeros).with_tail(data.tail);
    let req = RegDetRequest::new(data.p() + 1, z, n)
        .pairing(data.pairing)
        .certified();
    let d = det_p(&op, &req)?;
    let zm = int_pow(z, data.m as i32)?;
    let eg = if data.g_coeffs.len() == 1 {
        data.g_coeffs[0].exp()
    } else {
        data.g(z).exp()
    };
    Ok(Reconstruction {
        value: zm * eg * d.value,
        tail_estimate: d.tail_estimate,
    })
}

/// `sin(pi z) / (pi z)`, the direct oracle for [`HadamardData::sinc`].
pub fn sinc_oracle(z: Complex64) -> Complex64 {
    if z == ZERO {
        return ONE;
    }
    (z * PI).sin() / (z * PI)
}

/// `|a - b| / |b|` with `|b| = 0` mapped to the absolute difference.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    let d = (a - b).norm();
    if b == ZERO {
        d
    } else {
        d / b.norm()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use crate::recon::oracle::{gamma_oracle, zeta_oracle};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_examples() {
        let z2 = ZeroMultiset::zeros([c(2.0, 0.0)]).unwrap();
        let p3 = ZeroMultiset::simple([c(3.0, 0.0)], SetKind::Poles).unwrap();
        let empty = ZeroMultiset::empty(SetKind::Poles);
        let v = rational_reconstruct(&z2, &p3, 0, ONE, ONE).unwrap();
        assert!((v - c(0.75, 0.0)).norm() < 1e-15);
        assert_eq!(rational_reconstruct(&z2, &empty, 1, c(5.0, 0.0), c(2.0, 0.0)).unwrap(), ZERO);
        let conj = ZeroMultiset::zeros([c(1.0, 1.0), c(1.0, -1.0)]).unwrap();
        assert_eq!(rational_reconstruct(&conj, &empty, 0, c(2.0, 0.0), ZERO).unwrap(), c(2.0, 0.0));
        assert_eq!(
            rational_reconstruct(&z2, &p3, 0, ONE, c(3.0, 0.0)),
            Err(Error::PoleFactor { index: 0 })
        );
    }

    #[test]
    fn rational_exact_path() {
        let v = rational_reconstruct_exact(&[(r(2, 1), 1)], &[(r(3, 1), 1)], 0, &r(1, 1), &r(1, 1)).unwrap();
        assert_eq!(v, r(3, 4));
        let v = rational_reconstruct_exact(&[(r(1, 2), 2)], &[(r(-5, 1), 1)], -1, &r(7, 3), &r(3, 2)).unwrap();
        // (3/2)^{-1} (7/3) (1-3)^2 / (1 + 3/10)
        assert_eq!(v, r(2, 3) * r(7, 3) * r(4, 1) / r(13, 10));
        assert_eq!(
            rational_reconstruct_exact(&[], &[(r(3, 1), 1)], 0, &r(1, 1), &r(3, 1)),
            Err(Error::PoleFactor { index: 0 })
        );
    }

    #[test]
    fn gamma_small_n() {
        // N = 10^4 keeps the test fast; the truncation estimate covers the error
        let op = gamma_operator(10_000).unwrap();
        for &z in &[c(1.0, 0.0), c(0.5, 0.0), c(2.0, 1.0), c(-0.5, 0.3)] {
            let rec = gamma_reconstruct_with(&op, z).unwrap();
            let want = gamma_oracle(z).unwrap();
            assert!(rel_err(rec.value, want) <= 2.0 * rec.tail_estimate, "{z}");
        }
        assert!(matches!(gamma_reconstruct_with(&op, c(-2.0, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn euler_examples() {
        assert!((euler_factor(2, c(2.0, 0.0)).unwrap() - c(4.0 / 3.0, 0.0)).norm() < 1e-15);
        let v = euler_product_det(c(3.0, 0.0), 1000).unwrap();
        assert!(rel_err(v, zeta_oracle(c(3.0, 0.0)).unwrap()) < 1e-6);
        assert!(matches!(euler_product_det(c(1.0, 5.0), 100), Err(Error::Domain(_))));
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn xi_at_origin_is_half() {
        let d = ZeroDataset::from_heights(vec![14.134725142, 21.022039639], "t").unwrap();
        let v = xi_reconstruct(ZERO, &d, 2).unwrap();
        assert_eq!(v.value, c(0.5, 0.0));
        assert!(xi_reconstruct(ONE, &d, 3).is_err());
    }

    #[test]
    fn hadamard_trivial_cases() {
        let h = HadamardData::one_minus_z().unwrap();
        for &z in &[c(0.3, 0.0), c(-2.0, 1.0), c(7.0, -3.0)] {
            assert_eq!(hadamard_reconstruct(&h, z, 1).unwrap().value, ONE - z);
        }
        let h = HadamardData::exp_one_minus_z().unwrap();
        let v = hadamard_reconstruct(&h, c(0.7, 0.0), 1).unwrap().value;
        assert_eq!(v, c(0.7, 0.0).exp() * (ONE - c(0.7, 0.0)));
        assert!((v.re - 0.604_125_812_241_143).abs() < 1e-15);
        // at genus 1 the same function has g = 0: det_2 carries e^z
        let h1 = HadamardData::new(ZeroMultiset::zeros([ONE]).unwrap(), 0, Vec::new(), 1.0, TailModel::Finite).unwrap();
        let v1 = hadamard_reconstruct(&h1, c(0.7, 0.0), 1).unwrap().value;
        assert!((v1 - v).norm() < 1e-15);
        assert!(HadamardData::one_minus_z().unwrap().with_genus(1).is_err());
        assert_eq!(hadamard_reconstruct(&h, ONE, 1).unwrap().value, ZERO);
        // deg g must not exceed the order
        assert!(HadamardData::new(ZeroMultiset::zeros([ONE]).unwrap(), 0, vec![ZERO, ZERO, ONE], 1.0, TailModel::Finite).is_err());
    }

    #[test]
    fn hadamard_p0_matches_rational_bitwise() {
        let zeros = ZeroMultiset::new(vec![(c(2.0, 1.0), 2), (c(-3.0, 0.5), 1)], SetKind::Zeros).unwrap();
        let g0 = c(0.25, -0.5);
        let h = HadamardData::new(zeros.clone(), 2, vec![g0], 0.0, TailModel::Finite).unwrap();
        for &z in &[c(0.1, 0.2), c(-1.5, 3.0), c(2.0, 1.0)] {
            let a = hadamard_reconstruct(&h, z, 3).unwrap().value;
            let b = rational_reconstruct(&zeros, &ZeroMultiset::empty(SetKind::Poles), 2, g0.exp(), z).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn hadamard_certification() {
        // order-0 data with an infinite 1/n tail is not trace class
        let mut h = HadamardData::sinc(10).unwrap();
        h.order_lambda = 0.0;
        assert!(matches!(hadamard_reconstruct(&h, c(0.5, 0.0), 20), Err(Error::Certification(_))));
        let h = HadamardData::sinc(10_000).unwrap();
        let rec = hadamard_reconstruct(&h, c(0.5, 0.0), 20_000).unwrap();
        assert!(rel_err(rec.value, sinc_oracle(c(0.5, 0.0))) < 1e-4);
    }
}
