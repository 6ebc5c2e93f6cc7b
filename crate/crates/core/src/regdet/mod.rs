//! Fredholm and regularized determinants `det_p(I - z D_Z)` of diagonal
//! operators, evaluated as `exp` of a compensated sum of per-eigenvalue log
//! terms, plus dense-matrix oracles for the finite-dimensional identities.

pub mod dense;

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::{regdet_log_term, regdet_term};
use crate::opmodel::{classify_with_tail, DiagonalOperator, TailModel};
use crate::par::fixed_order_sum;

/// How eigenvalue factors are grouped before their logs are accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    #[default]
    AsStored,
    /// Factors for `z_n` and `conj(z_n)` are combined first.
    ConjugatePaired,
    /// Additionally groups `rho` with `1 - rho` (and conjugates) among the
    /// source zeros, the symmetry of the completed zeta function.
    FunctionalPaired,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegDetRequest {
    pub order_p: u32,
    pub eval_point: Complex64,
    pub truncation: usize,
    pub pairing: Pairing,
    /// Overrides the operator's own tail model when set.
    pub tail_model: Option<TailModel>,
    /// Refuse to evaluate unless the operator is certified to lie in `J_p`.
    pub certify: bool,
}

impl RegDetRequest {
    pub fn new(order_p: u32, eval_point: Complex64, truncation: usize) -> Self {
        Self {
            order_p,
            eval_point,
            truncation,
            pairing: Pairing::AsStored,
            tail_model: None,
            certify: false,
        }
    }

    pub fn pairing(mut self, pairing: Pairing) -> Self {
        self.pairing = pairing;
        self
    }

    pub fn tail_model(mut self, tail: TailModel) -> Self {
        self.tail_model = Some(tail);
        self
    }

    pub fn certified(mut self) -> Self {
        self.certify = true;
        self
    }
}

/// A determinant value with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetValue {
    pub value: Complex64,
    /// Bound on `|log(truncated) - log(full)|`; infinite when the tail model
    /// gives no rate, zero when nothing was truncated.
    pub tail_estimate: f64,
    /// Index of the first factor that vanished exactly, if any.
    pub annihilator: Option<usize>,
}

impl DetValue {
    fn exact_zero(index: usize, tail_estimate: f64) -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            tail_estimate,
            annihilator: Some(index),
        }
    }
}

/// Ordinary Fredholm determinant `prod_{n<N} (1 - z_n z)`.
///
/// Requires the operator to be trace class under its tail model. This is
/// `det_p` with order 1 and stored order, so the two agree bit-for-bit.
pub fn det_fredholm(op: &DiagonalOperator, z: Complex64, n: usize) -> Result<DetValue> {
    det_p(op, &RegDetRequest::new(1, z, n).certified())
}

/// `det_p(I - z D_Z)` truncated to the first `N` diagonal entries.
pub fn det_p(op: &DiagonalOperator, req: &RegDetRequest) -> Result<DetValue> {
    let p = req.order_p;
    if p == 0 {
        return Err(Error::Invalid("determinant order must be at least 1".into()));
    }
    let tail = req.tail_model.unwrap_or(op.tail());
    if req.certify {
        let class = classify_with_tail(op, tail, p, 0.0)?;
        if !class.in_ideal(p) {
            return Err(Error::Certification(format!(
                "operator with tail {tail:?} is not certified in J_{p} (p_star {})",
                class.p_star
            )));
        }
    }
    if tail.is_finite() && req.truncation < op.len() {
        return Err(Error::Invalid(format!(
            "finite operator has {} entries but truncation is {}",
            op.len(),
            req.truncation
        )));
    }
    let n = req.truncation.min(op.len());
    let z = req.eval_point;
    let tail_estimate = tail_bound(op, tail, p, z, n);
    if z == Complex64::new(0.0, 0.0) {
        return Ok(DetValue {
            value: Complex64::new(1.0, 0.0),
            tail_estimate: 0.0,
            annihilator: None,
        });
    }
    let mu = -z;
    let diag = op.diagonal();
    if tail.is_finite() {
        return direct_product(op, p, z, n, req.pairing);
    }
    let log_term = |i: usize| -> Result<Complex64> {
        if op.zero_at(i) == z {
            return Err(Error::ZeroFactor { index: i });
        }
        regdet_log_term(p, diag[i], mu).map_err(|e| match e {
            Error::ZeroFactor { .. } => Error::ZeroFactor { index: i },
            other => other,
        })
    };

    let sum = match req.pairing {
        Pairing::AsStored => fixed_order_sum(n, log_term),
        pairing => {
            let groups = group_indices(op, n, pairing);
            fixed_order_sum(groups.len(), |g| {
                let mut acc = Complex64::new(0.0, 0.0);
                for &i in &groups[g] {
                    acc += log_term(i)?;
                }
                Ok(acc)
            })
        }
    };
    let sum = match sum {
        Ok(s) => s,
        Err(Error::ZeroFactor { .. }) => {
            // report the lowest vanishing index regardless of grouping
            let index = (0..n)
                .find(|&i| matches!(log_term(i), Err(Error::ZeroFactor { .. })))
                .unwrap_or(0);
            return Ok(DetValue::exact_zero(index, tail_estimate));
        }
        Err(e) => return Err(e),
    };
    if sum.re > 709.0 {
        return Err(Error::Range(format!("determinant overflows: log = {sum}")));
    }
    Ok(DetValue {
        value: sum.exp(),
        tail_estimate,
        annihilator: None,
    })
}

/// Plain product of the per-eigenvalue factors, used when every stored
/// entry takes part; order 1 then yields exactly `prod (1 - z_n z)`.
fn direct_product(op: &DiagonalOperator, p: u32, z: Complex64, n: usize, pairing: Pairing) -> Result<DetValue> {
    let mu = -z;
    let diag = op.diagonal();
    let mut value = Complex64::new(1.0, 0.0);
    for group in group_indices(op, n, pairing) {
        let mut g = Complex64::new(1.0, 0.0);
        for i in group {
            let t = if op.zero_at(i) == z {
                Complex64::new(0.0, 0.0)
            } else {
                regdet_term(p, diag[i], mu)?
            };
            if t == Complex64::new(0.0, 0.0) {
                let index = (0..n)
                    .find(|&j| op.zero_at(j) == z || regdet_term(p, diag[j], mu).ok() == Some(Complex64::new(0.0, 0.0)))
                    .unwrap_or(i);
                return Ok(DetValue::exact_zero(index, 0.0));
            }
            g *= t;
        }
        value *= g;
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::Range(format!("finite product overflows at z = {z}")));
    }
    Ok(DetValue {
        value,
        tail_estimate: 0.0,
        annihilator: None,
    })
}

/// Groups of diagonal indices `< n`, ordered by their first member.
fn group_indices(op: &DiagonalOperator, n: usize, pairing: Pairing) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    match pairing {
        Pairing::AsStored => groups.extend((0..n).map(|i| vec![i])),
        Pairing::ConjugatePaired => {
            let diag = op.diagonal();
            // unmatched entries waiting for their conjugate, keyed by value
            let mut pending: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
            for (i, d) in diag.iter().enumerate().take(n) {
                let want = (d.re.to_bits(), (-d.im).to_bits());
                if d.im != 0.0 {
                    if let Some(g) = pending.get_mut(&want).and_then(|v| v.pop()) {
                        groups[g].push(i);
                        continue;
                    }
                    pending
                        .entry((d.re.to_bits(), d.im.to_bits()))
                        .or_default()
                        .push(groups.len());
                }
                groups.push(vec![i]);
            }
        }
        Pairing::FunctionalPaired => {
            // rho, conj(rho), 1 - rho, 1 - conj(rho) share |Im rho| and |Re rho - 1/2|
            const QUANTUM: f64 = 1e8;
            let mut slot: HashMap<(i64, i64), usize> = HashMap::new();
            for i in 0..n {
                let rho = op.zero_at(i);
                let key = (
                    (rho.im.abs() * QUANTUM).round() as i64,
                    ((rho.re - 0.5).abs() * QUANTUM).round() as i64,
                );
                match slot.get(&key) {
                    Some(&g) => groups[g].push(i),
                    None => {
                        slot.insert(key, groups.len());
                        groups.push(vec![i]);
                    }
                }
            }
        }
    }
    groups
}

/// Bound on the log of the omitted factors under a power-law tail.
///
/// With `|z_n| <= c n^-kappa` for `n > N` (c fitted from the last stored
/// entry) and `|z| c (N+1)^-kappa <= 1/2`, each omitted log term is at most
/// `2 |z z_n|^p`, and the sum is bounded by integral comparison.
fn tail_bound(op: &DiagonalOperator, tail: TailModel, p: u32, z: Complex64, n: usize) -> f64 {
    if z == Complex64::new(0.0, 0.0) {
        return 0.0;
    }
    match tail {
        TailModel::Finite => 0.0,
        TailModel::Declared { .. } => f64::INFINITY,
        TailModel::PowerLaw { kappa } => {
            let pk = p as f64 * kappa;
            if n == 0 || pk <= 1.0 {
                return f64::INFINITY;
            }
            let c = op.diagonal()[n - 1].norm() * (n as f64).powf(kappa);
            let first = z.norm() * c * ((n + 1) as f64).powf(-kappa);
            if first > 0.5 {
                return f64::INFINITY;
            }
            let zc = z.norm() * c;
            2.0 * zc.powi(p as i32) * (n as f64).powf(1.0 - pk) / (pk - 1.0)
        }
    }
}
