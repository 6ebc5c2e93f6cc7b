//! Local zeta functions `Z(T) = exp(sum Y_n T^n / n) = P(T) / ((1-T)(1-qT))`
//! in exact arithmetic, with floating point only for the roots of `P`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::curve::PlaneCurve;
use crate::error::{Error, Result};
use crate::opmodel::{DiagonalOperator, SetKind};
use crate::regdet::det_fredholm;

/// Coefficients `1, c_1, ..., c_M` of `exp(sum_{n<=M} Y_n T^n / n)`.
pub fn zeta_series(counts: &[u64]) -> Vec<BigRational> {
    let m = counts.len();
    let mut c = vec![BigRational::one()];
    for k in 1..=m {
        let mut acc = BigRational::zero();
        for n in 1..=k {
            acc += BigRational::from_integer(BigInt::from(counts[n - 1])) * &c[k - n];
        }
        c.push(acc / BigRational::from_integer(BigInt::from(k)));
    }
    c
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalZeta {
    pub q: u64,
    pub counts: Vec<u64>,
    /// `a_0 = 1, a_1, ..., a_{2g}`.
    #[serde(serialize_with = "ser_bigints")]
    pub numerator: Vec<BigInt>,
    pub genus: u32,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

/// Reads `P(T)` off `series * (1 - T)(1 - qT)`.
///
/// With a genus hint `g` the series must reach order `2g + 1`; without one
/// the numerator's degree is taken from the last nonzero coefficient, which
/// must be even and followed by at least one known vanishing coefficient.
pub fn rational_recognize(series: &[BigRational], q: u64, genus_hint: Option<u32>) -> Result<LocalZeta> {
    if series.is_empty() || !series[0].is_one() {
        return Err(Error::Recognition("series must start with 1".into()));
    }
    let qb = BigRational::from_integer(BigInt::from(q));
    let q1 = BigRational::from_integer(BigInt::from(q + 1));
    let m = series.len() - 1;
    let prod: Vec<BigRational> = (0..=m)
        .map(|j| {
            let mut b = series[j].clone();
            if j >= 1 {
                b -= &q1 * &series[j - 1];
            }
            if j >= 2 {
                b += &qb * &series[j - 2];
            }
            b
        })
        .collect();
    let degree = match genus_hint {
        Some(g) => {
            let d = 2 * g as usize;
            if m < d + 1 {
                return Err(Error::Recognition(format!(
                    "genus {g} needs counts through order {}, have {m}",
                    d + 1
                )));
            }
            if let Some(j) = (d + 1..=m).find(|&j| !prod[j].is_zero()) {
                return Err(Error::Recognition(format!(
                    "coefficient of T^{j} does not vanish; not genus {g}"
                )));
            }
            d
        }
        None => {
            let d = (0..=m).rev().find(|&j| !prod[j].is_zero()).unwrap_or(0);
            if d >= m {
                return Err(Error::Recognition(format!(
                    "numerator does not terminate within order {m}; count over more extensions"
                )));
            }
            if d % 2 == 1 {
                return Err(Error::Recognition(format!("numerator degree {d} is odd")));
            }
            d
        }
    };
    let numerator = prod[..=degree]
        .iter()
        .map(|r| {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(Error::Recognition(format!("non-integer coefficient {r}")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalZeta {
        q,
        counts: Vec::new(),
        numerator,
        genus: (degree / 2) as u32,
    })
}

impl LocalZeta {
    /// Counts `Y_1..Y_m`, then exact recognition.
    pub fn from_curve(curve: &PlaneCurve, m: u32) -> Result<Self> {
        let counts = (1..=m).map(|n| curve.count_points(n)).collect::<Result<Vec<_>>>()?;
        let mut lz = rational_recognize(&zeta_series(&counts), curve.q(), curve.genus_hint)?;
        lz.counts = counts;
        Ok(lz)
    }

    fn numerator_f64(&self) -> Vec<f64> {
        self.numerator.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `P(T)` in floating point.
    pub fn numerator_at(&self, t: Complex64) -> Complex64 {
        self.numerator_f64()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| acc * t + a)
    }

    /// `P(T) / ((1 - T)(1 - qT))` evaluated directly.
    pub fn rational_at(&self, t: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        self.numerator_at(t) / ((one - t) * (one - t * self.q as f64))
    }

    /// Inverse roots `alpha_i` of `P(T) = prod (1 - alpha_i T)`.
    pub fn inverse_roots(&self) -> Vec<Complex64> {
        inverse_roots(&self.numerator, self.q)
    }

    /// `Y_n = q^n + 1 - sum alpha_i^n` from the coefficients of `P` by
    /// Newton's identities, for `n = 1..=m`.
    pub fn counts_from_numerator(&self, m: usize) -> Vec<BigInt> {
        let a = |i: usize| self.numerator.get(i).cloned().unwrap_or_else(BigInt::zero);
        let mut s: Vec<BigInt> = vec![BigInt::zero()];
        for n in 1..=m {
            let mut v = -BigInt::from(n) * a(n);
            for i in 1..n {
                v -= a(i) * &s[n - i];
            }
            s.push(v);
        }
        (1..=m)
            .map(|n| BigInt::from(self.q).pow(n as u32) + 1 - &s[n])
            .collect()
    }

    /// `a_{2g-i} = q^{g-i} a_i` for `i <= g`.
    pub fn functional_equation_holds(&self) -> bool {
        let g = self.genus as usize;
        (0..=g).all(|i| self.numerator[2 * g - i] == BigInt::from(self.q).pow((g - i) as u32) * &self.numerator[i])
    }

    /// `(Y_n - q^n - 1)^2 <= 4 g^2 q^n` for every stored count.
    pub fn weil_bound_holds(&self) -> Vec<bool> {
        let g = BigInt::from(self.genus);
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &y)| {
                let qn = BigInt::from(self.q).pow(i as u32 + 1);
                let d = BigInt::from(y) - &qn - 1;
                &d * &d <= BigInt::from(4) * &g * &g * qn
            })
            .collect()
    }
}

type RatPoly = Vec<BigRational>;

fn rtrim(mut a: RatPoly) -> RatPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn rat_rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let f = r.last().unwrap() / &lead;
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        r.pop();
        r = rtrim(r);
    }
    r
}

fn rat_div(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let f = r.last().unwrap() / &lead;
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        quot[shift] = f;
        r.pop();
    }
    rtrim(quot)
}

fn rat_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (rtrim(a.clone()), rtrim(b.clone()));
    while !y.is_empty() {
        let r = rat_rem(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn rat_monic(a: RatPoly) -> RatPoly {
    let lead = a.last().cloned().unwrap_or_else(BigRational::one);
    a.into_iter().map(|c| c / &lead).collect()
}

fn rat_deriv(a: &RatPoly) -> RatPoly {
    rtrim(
        (1..a.len())
            .map(|i| &a[i] * BigRational::from_integer(BigInt::from(i)))
            .collect(),
    )
}

/// Yun's square-free decomposition: `(factor, multiplicity)` pairs with
/// `a = prod factor^multiplicity` up to a constant.
fn squarefree_parts(a: &RatPoly) -> Vec<(RatPoly, usize)> {
    let mut out = Vec::new();
    let mut c = rat_monic(rat_gcd(a, &rat_deriv(a)));
    let mut w = rat_div(a, &c);
    let mut i = 1;
    while c.len() > 1 {
        let y = rat_monic(rat_gcd(&w, &c));
        let z = rat_div(&w, &y);
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        c = rat_div(&c, &y);
        w = y;
    }
    if w.len() > 1 {
        out.push((w, i));
    }
    out
}

/// Roots of `alpha^d + a_1 alpha^{d-1} + ... + a_d` (the reversed
/// numerator), each repeated by its multiplicity.
fn inverse_roots(numerator: &[BigInt], q: u64) -> Vec<Complex64> {
    if numerator.len() <= 1 {
        return Vec::new();
    }
    let rev: RatPoly = numerator.iter().rev().map(|a| BigRational::from_integer(a.clone())).collect();
    let mut out = Vec::with_capacity(numerator.len() - 1);
    for (factor, mult) in squarefree_parts(&rev) {
        for r in polish_roots(&factor, (q as f64).sqrt()) {
            out.extend(std::iter::repeat(r).take(mult));
        }
    }
    out
}

/// Companion-matrix eigenvalues of monic `p` after scaling the variable by
/// `scale`, then Newton refinement on the unscaled polynomial.
fn polish_roots(p: &RatPoly, scale: f64) -> Vec<Complex64> {
    let d = p.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = p[d].to_f64().unwrap();
    let coeffs: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap() / lead).collect();
    // beta = alpha / scale: beta^d + sum_{i<d} c_i scale^{i-d} beta^i
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -coeffs[i] * scale.powi(i as i32 - d as i32);
    }
    let eig = m.complex_eigenvalues();
    let f = |x: Complex64| coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c);
    let df = |x: Complex64| {
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, c)| acc * x + c * i as f64)
    };
    eig.iter()
        .map(|b| {
            let mut x = b * scale;
            for _ in 0..50 {
                let dx = f(x) / df(x);
                if !dx.re.is_finite() || !dx.im.is_finite() {
                    break;
                }
                x -= dx;
                if dx.norm() <= 1e-17 * x.norm() {
                    break;
                }
            }
            x
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeilReport {
    pub sqrt_q: f64,
    /// `|alpha_i|` for every inverse root.
    pub moduli: Vec<f64>,
    pub max_deviation: f64,
    pub pass: bool,
}

/// Every inverse root of `P` has modulus `sqrt q` within `tol * sqrt q`.
pub fn weil_rh_check(lz: &LocalZeta, tol: f64) -> WeilReport {
    let sqrt_q = (lz.q as f64).sqrt();
    let moduli: Vec<f64> = lz.inverse_roots().iter().map(|a| a.norm()).collect();
    let max_deviation = moduli.iter().fold(0.0f64, |m, r| m.max((r - sqrt_q).abs()));
    WeilReport {
        sqrt_q,
        pass: max_deviation <= tol * sqrt_q,
        moduli,
        max_deviation,
    }
}

/// Relative tolerance between the determinant and direct routes.
pub const DET_FORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetFormValue {
    pub value: Complex64,
    /// `P(T) / ((1-T)(1-qT))` evaluated directly at `T = q^{-s}`.
    pub cross_check: Complex64,
    pub discrepancy: f64,
}

/// `zeta_Y(s) = det_1(I - q^{-s} D_P) / det_1(I - q^{-s} D_g)` where `D_P`
/// carries the inverse roots of `P` and `D_g` the values `1, q`.
pub fn curve_zeta_det_form(lz: &LocalZeta, s: Complex64) -> Result<DetFormValue> {
    let t = (-s * (lz.q as f64).ln()).exp();
    let num_op = DiagonalOperator::from_diagonal(lz.inverse_roots(), SetKind::Zeros)?;
    let den_op = DiagonalOperator::from_diagonal(
        vec![Complex64::new(1.0, 0.0), Complex64::new(lz.q as f64, 0.0)],
        SetKind::Poles,
    )?;
    let den = det_fredholm(&den_op, t, 2)?;
    if let Some(index) = den.annihilator {
        return Err(Error::PoleFactor { index });
    }
    // T = q^{-s} lands on 1 or 1/q only up to rounding
    let one = Complex64::new(1.0, 0.0);
    for (index, v) in [(0, one - t), (1, one - t * lz.q as f64)] {
        if v.norm() < 1e-12 {
            return Err(Error::PoleFactor { index });
        }
    }
    let num = det_fredholm(&num_op, t, num_op.len())?;
    let value = num.value / den.value;
    let cross_check = lz.rational_at(t);
    let discrepancy = (value - cross_check).norm() / cross_check.norm().max(f64::MIN_POSITIVE);
    if discrepancy > DET_FORM_TOLERANCE {
        return Err(Error::Consistency {
            what: format!("curve zeta determinant form at s = {s}"),
            discrepancy,
            tolerance: DET_FORM_TOLERANCE,
        });
    }
    Ok(DetFormValue {
        value,
        cross_check,
        discrepancy,
    })
}

/// Exact `P(T) / ((1-T)(1-qT))` at rational `T`.
pub fn rational_value_exact(lz: &LocalZeta, t: &BigRational) -> Result<BigRational> {
    let one = BigRational::one();
    let den = (&one - t) * (&one - t * BigRational::from_integer(BigInt::from(lz.q)));
    if den.is_zero() {
        return Err(Error::Pole(format!("T = {t}")));
    }
    let num = lz
        .numerator
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, a| acc * t + BigRational::from_integer(a.clone()));
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffcurves::field::FiniteField;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn lz(q: u64, p: &[i64]) -> LocalZeta {
        LocalZeta {
            q,
            counts: Vec::new(),
            numerator: ints(p),
            genus: (p.len() as u32 - 1) / 2,
        }
    }

    #[test]
    fn series_examples() {
        // P^1: coefficient of T^j is (q^{j+1} - 1)/(q - 1)
        let counts: Vec<u64> = (1..=6).map(|n| 3u64.pow(n) + 1).collect();
        let s = zeta_series(&counts);
        for (j, c) in s.iter().enumerate() {
            assert_eq!(c.to_integer(), BigInt::from((3u64.pow(j as u32 + 1) - 1) / 2));
            assert!(c.is_integer());
        }
        let s = zeta_series(&[4]);
        assert_eq!(s, vec![BigRational::one(), BigRational::from_integer(4.into())]);
        assert!(zeta_series(&[0, 0, 0]).iter().skip(1).all(|c| c.is_zero()));
    }

    #[test]
    fn recognize_curves() {
        let counts: Vec<u64> = (1..=4).map(|n| 3u64.pow(n) + 1).collect();
        let p1 = rational_recognize(&zeta_series(&counts), 3, None).unwrap();
        assert_eq!(p1.numerator, ints(&[1]));
        assert_eq!(p1.genus, 0);
        for &(p, want) in &[(3u64, [1i64, 0, 3]), (5, [1, -2, 5])] {
            let c = PlaneCurve::affine(FiniteField::new(p, 1).unwrap(), "y^2", "x^3 + x", 1).unwrap();
            let z = LocalZeta::from_curve(&c, 4).unwrap();
            assert_eq!(z.numerator, ints(&want));
            assert_eq!(z.genus, 1);
            assert!(z.functional_equation_holds());
            assert!(z.weil_bound_holds().iter().all(|&b| b));
            let back = z.counts_from_numerator(4);
            assert_eq!(back, z.counts.iter().map(|&y| BigInt::from(y)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn recognition_failures() {
        // a single count cannot pin down a genus-1 numerator
        let s = zeta_series(&[4]);
        assert!(matches!(rational_recognize(&s, 3, Some(1)), Err(Error::Recognition(_))));
        // with no hint, Y_1 = q + 1 is read as genus 0 ...
        assert_eq!(rational_recognize(&s, 3, None).unwrap().genus, 0);
        // ... while Y_1 = 5 leaves a nonterminating numerator
        let s = zeta_series(&[5]);
        assert!(matches!(rational_recognize(&s, 3, None), Err(Error::Recognition(_))));
        // counts not coming from a curve
        let s = zeta_series(&[1, 7, 2, 9, 11]);
        assert!(rational_recognize(&s, 3, Some(1)).is_err());
    }

    #[test]
    fn squarefree_decomposition() {
        let r = |v: &[i64]| -> RatPoly { v.iter().map(|&x| BigRational::from_integer(x.into())).collect() };
        // (x - 1)^2 (x + 2)
        let parts = squarefree_parts(&r(&[2, -3, 0, 1]));
        assert_eq!(parts, vec![(r(&[2, 1]), 1), (r(&[-1, 1]), 2)]);
    }

    #[test]
    fn weil_examples() {
        let r = weil_rh_check(&lz(3, &[1, 0, 3]), 1e-12);
        assert!(r.pass);
        assert!(r.moduli.iter().all(|m| (m - 3f64.sqrt()).abs() < 1e-15));
        let r = weil_rh_check(&lz(5, &[1, -2, 5]), 1e-12);
        assert!(r.pass && r.moduli.len() == 2);
        let r = weil_rh_check(&lz(3, &[1]), 1e-12);
        assert!(r.pass && r.moduli.is_empty());
        // repeated inverse root -3 (P = (1 + 3T)^2, q = 9)
        let r = weil_rh_check(&lz(9, &[1, 6, 9]), 1e-12);
        assert!(r.pass, "{r:?}");
        assert_eq!(r.moduli.len(), 2);
        // not a Weil polynomial
        assert!(!weil_rh_check(&lz(3, &[1, 1, 1]), 1e-12).pass);
    }

    #[test]
    fn det_form_examples() {
        let s = Complex64::new(2.0, 0.0);
        let v = curve_zeta_det_form(&lz(3, &[1]), s).unwrap();
        assert!((v.value.re - 1.6875).abs() < 1e-14);
        let v = curve_zeta_det_form(&lz(3, &[1, 0, 3]), s).unwrap();
        assert!((v.value.re - 1.75).abs() < 1e-14);
        let v = curve_zeta_det_form(&lz(5, &[1, -2, 5]), Complex64::new(1e6, 0.0)).unwrap();
        assert_eq!(v.value, Complex64::new(1.0, 0.0));
        assert!(matches!(curve_zeta_det_form(&lz(3, &[1]), Complex64::new(0.0, 0.0)), Err(Error::PoleFactor { .. })));
        let exact = rational_value_exact(&lz(3, &[1, 0, 3]), &BigRational::new(1.into(), 9.into())).unwrap();
        assert_eq!(exact, BigRational::new(7.into(), 4.into()));
        assert!(matches!(curve_zeta_det_form(&lz(3, &[1]), Complex64::new(1.0, 0.0)), Err(Error::PoleFactor { index: 1 })));
    }
}
