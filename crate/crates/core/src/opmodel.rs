//! The diagonal operator `D_Z` attached to a multiset of zeros (or poles):
//! its diagonal holds the reciprocals `1/a_n`, so the point spectrum of the
//! operator is exactly the reciprocal zero set, with multiplicity.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Zeros,
    Poles,
}

/// What is known about the entries beyond the stored ones.
///
/// Summability cannot be decided from a finite truncation, so every operator
/// carries a declared model of its tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum TailModel {
    /// The stored entries are all of them.
    Finite,
    /// `|z_n| = Theta(n^-kappa)`; `sum |z_n|^p` converges iff `p * kappa > 1`.
    PowerLaw { kappa: f64 },
    /// Caller vouches for membership in `J_p` for `p >= p_star`.
    Declared { p_star: u32 },
}

impl TailModel {
    pub fn is_finite(&self) -> bool {
        matches!(self, TailModel::Finite)
    }
}

/// Ordered multiset of nonzero complex numbers with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroMultiset {
    entries: Vec<(Complex64, u32)>,
    kind: SetKind,
}

impl ZeroMultiset {
    pub fn new(entries: Vec<(Complex64, u32)>, kind: SetKind) -> Result<Self> {
        for (i, &(v, m)) in entries.iter().enumerate() {
            if m == 0 {
                return Err(Error::Invalid(format!("entry {i} has multiplicity 0")));
            }
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::Invalid(format!("entry {i} is not finite: {v}")));
            }
            if v == Complex64::new(0.0, 0.0) {
                return Err(Error::Invalid(format!(
                    "entry {i} is 0; the construction needs f(0) != 0"
                )));
            }
        }
        Ok(Self { entries, kind })
    }

    /// Every value with multiplicity one.
    pub fn simple<I: IntoIterator<Item = Complex64>>(values: I, kind: SetKind) -> Result<Self> {
        Self::new(values.into_iter().map(|v| (v, 1)).collect(), kind)
    }

    pub fn zeros<I: IntoIterator<Item = Complex64>>(values: I) -> Result<Self> {
        Self::simple(values, SetKind::Zeros)
    }

    pub fn empty(kind: SetKind) -> Self {
        Self {
            entries: Vec::new(),
            kind,
        }
    }

    pub fn entries(&self) -> &[(Complex64, u32)] {
        &self.entries
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    /// Total count with multiplicity.
    pub fn expanded_len(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn expanded(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat(v).take(m as usize))
    }
}

/// The restricted operator `D_Z`: multiplication by `z_n = 1/a_n` on the
/// span of the eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalOperator {
    diagonal: Vec<Complex64>,
    /// Source values expanded by multiplicity, aligned with `diagonal`.
    expanded_source: Vec<Complex64>,
    source: ZeroMultiset,
    tail: TailModel,
}

impl DiagonalOperator {
    pub fn from_zeros(zeros: &ZeroMultiset) -> Self {
        let expanded_source: Vec<Complex64> = zeros.expanded().collect();
        let diagonal = expanded_source.iter().map(|a| a.inv()).collect();
        Self {
            diagonal,
            expanded_source,
            source: zeros.clone(),
            tail: TailModel::Finite,
        }
    }

    /// Operator with the given diagonal kept bit-for-bit; the source set is
    /// the entrywise reciprocal (exact up to one rounding per entry).
    pub fn from_diagonal(diagonal: Vec<Complex64>, kind: SetKind) -> Result<Self> {
        let source = ZeroMultiset::simple(diagonal.iter().map(|z| z.inv()), kind)
            .map_err(|e| Error::Invalid(format!("diagonal entry not invertible: {e}")))?;
        Ok(Self {
            expanded_source: source.expanded().collect(),
            diagonal,
            source,
            tail: TailModel::Finite,
        })
    }

    pub fn with_tail(mut self, tail: TailModel) -> Self {
        self.tail = tail;
        self
    }

    pub fn diagonal(&self) -> &[Complex64] {
        &self.diagonal
    }

    /// The zero (or pole) `a_n` behind diagonal entry `n`.
    pub fn zero_at(&self, n: usize) -> Complex64 {
        self.expanded_source[n]
    }

    pub fn source(&self) -> &ZeroMultiset {
        &self.source
    }

    pub fn tail(&self) -> TailModel {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Multiset of the diagonal's reciprocals (the source zeros, expanded).
    pub fn reciprocal_multiset(&self) -> ZeroMultiset {
        ZeroMultiset {
            entries: self.diagonal.iter().map(|z| (z.inv(), 1)).collect(),
            kind: self.source.kind,
        }
    }
}

/// Point spectrum as distinct values with multiplicities (first-seen order).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub points: Vec<(Complex64, usize)>,
    /// The closure adds 0 when the stored data truncate an infinite sequence.
    pub includes_zero: bool,
}

pub fn spectrum(op: &DiagonalOperator) -> Spectrum {
    let mut points: Vec<(Complex64, usize)> = Vec::new();
    let mut index: std::collections::HashMap<(u64, u64), usize> = std::collections::HashMap::new();
    for &z in &op.diagonal {
        let key = (z.re.to_bits(), z.im.to_bits());
        match index.get(&key) {
            Some(&i) => points[i].1 += 1,
            None => {
                index.insert(key, points.len());
                points.push((z, 1));
            }
        }
    }
    Spectrum {
        points,
        includes_zero: !op.tail.is_finite(),
    }
}

/// Number of diagonal entries exactly equal to `z`.
pub fn eigen_multiplicity(op: &DiagonalOperator, z: Complex64) -> usize {
    op.diagonal.iter().filter(|&&d| d == z).count()
}

/// `sup |z_n|` over the stored diagonal; 0 for the empty operator.
pub fn operator_norm(op: &DiagonalOperator) -> f64 {
    op.diagonal.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "p", rename_all = "kebab-case")]
pub enum PStar {
    Exponent(u32),
    NoneUpTo(u32),
}

impl fmt::Display for PStar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PStar::Exponent(p) => write!(f, "{p}"),
            PStar::NoneUpTo(p) => write!(f, "none-up-to({p})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdealClass {
    pub p_star: PStar,
    pub is_compact: bool,
    pub is_bounded: bool,
    pub is_self_adjoint: bool,
}

impl IdealClass {
    /// Membership in `J_p`; monotone in `p`.
    pub fn in_ideal(&self, p: u32) -> bool {
        match self.p_star {
            PStar::Exponent(s) => p >= s,
            PStar::NoneUpTo(_) => false,
        }
    }

    pub fn is_trace_class(&self) -> bool {
        self.in_ideal(1)
    }

    pub fn is_hilbert_schmidt(&self) -> bool {
        self.in_ideal(2)
    }
}

/// Trace-ideal classification under the operator's tail model.
///
/// `tol` bounds `|Im z_n|` for self-adjointness and is the margin by which
/// `p * kappa` must exceed 1 (and `kappa` exceed 0 for compactness).
pub fn classify(op: &DiagonalOperator, p_max: u32, tol: f64) -> Result<IdealClass> {
    classify_with_tail(op, op.tail, p_max, tol)
}

/// [`classify`] under a tail model other than the operator's own.
pub fn classify_with_tail(
    op: &DiagonalOperator,
    tail: TailModel,
    p_max: u32,
    tol: f64,
) -> Result<IdealClass> {
    if p_max == 0 {
        return Err(Error::Invalid("p_max must be at least 1".into()));
    }
    let is_self_adjoint = op.diagonal.iter().all(|z| z.im.abs() <= tol);
    let class = match tail {
        TailModel::Finite => IdealClass {
            p_star: PStar::Exponent(1),
            is_compact: true,
            is_bounded: true,
            is_self_adjoint,
        },
        TailModel::PowerLaw { kappa } => {
            let p_star = (1..=p_max)
                .find(|&p| p as f64 * kappa > 1.0 + tol)
                .map_or(PStar::NoneUpTo(p_max), PStar::Exponent);
            IdealClass {
                p_star,
                is_compact: kappa > tol,
                is_bounded: kappa >= -tol,
                is_self_adjoint,
            }
        }
        TailModel::Declared { p_star } => IdealClass {
            p_star: if p_star <= p_max {
                PStar::Exponent(p_star.max(1))
            } else {
                PStar::NoneUpTo(p_max)
            },
            is_compact: true,
            is_bounded: true,
            is_self_adjoint,
        },
    };
    Ok(class)
}

/// Least-squares slope of `log |values[n-1]|` against `log n` over
/// `n_lo..=n_hi` (1-based indices).
pub fn power_law_slope(values: &[f64], n_lo: usize, n_hi: usize) -> Result<f64> {
    if n_lo < 1 || n_lo >= n_hi || n_hi > values.len() {
        return Err(Error::Invalid(format!(
            "fit window {n_lo}..={n_hi} invalid for {} values",
            values.len()
        )));
    }
    let pts = (n_lo..=n_hi).map(|n| ((n as f64).ln(), values[n - 1].abs().ln()));
    Ok(least_squares_slope(pts))
}

pub(crate) fn least_squares_slope<I: Iterator<Item = (f64, f64)> + Clone>(pts: I) -> f64 {
    let (mut n, mut sx, mut sy) = (0.0, 0.0, 0.0);
    for (x, y) in pts.clone() {
        n += 1.0;
        sx += x;
        sy += y;
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in pts {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn harmonic(n: usize, power: i32) -> DiagonalOperator {
        let diag = (1..=n).map(|k| c((k as f64).powi(-power), 0.0)).collect();
        DiagonalOperator::from_diagonal(diag, SetKind::Zeros)
            .unwrap()
            .with_tail(TailModel::PowerLaw {
                kappa: power as f64,
            })
    }

    #[test]
    fn from_zeros_examples() {
        let op = DiagonalOperator::from_zeros(&ZeroMultiset::zeros([c(2.0, 0.0)]).unwrap());
        assert_eq!(op.diagonal(), &[c(0.5, 0.0)]);

        let n = 50;
        let z = ZeroMultiset::zeros((1..=n).map(|k| c(-(k as f64), 0.0))).unwrap();
        let op = DiagonalOperator::from_zeros(&z);
        for (k, d) in op.diagonal().iter().enumerate() {
            assert_eq!(*d, c(-1.0 / (k + 1) as f64, 0.0));
        }

        let op = DiagonalOperator::from_zeros(&ZeroMultiset::zeros([c(0.0, 1.0), c(0.0, -1.0)]).unwrap());
        assert_eq!(op.diagonal(), &[c(0.0, -1.0), c(0.0, 1.0)]);
    }

    #[test]
    fn zero_entry_rejected() {
        assert!(matches!(
            ZeroMultiset::zeros([c(1.0, 0.0), c(0.0, 0.0)]),
            Err(Error::Invalid(_))
        ));
        assert!(ZeroMultiset::new(vec![(c(1.0, 0.0), 0)], SetKind::Zeros).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let op = DiagonalOperator::from_diagonal(vec![c(0.5, 0.0)], SetKind::Zeros).unwrap();
        let s = spectrum(&op);
        assert_eq!(s.points, vec![(c(0.5, 0.0), 1)]);
        assert!(!s.includes_zero);

        let s = spectrum(&harmonic(10, 1));
        assert_eq!(s.points.len(), 10);
        assert!(s.includes_zero);

        let empty = DiagonalOperator::from_zeros(&ZeroMultiset::empty(SetKind::Zeros));
        let s = spectrum(&empty);
        assert!(s.points.is_empty() && !s.includes_zero);
    }

    #[test]
    fn multiplicity_examples() {
        let op = DiagonalOperator::from_diagonal(
            vec![c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0)],
            SetKind::Zeros,
        )
        .unwrap();
        assert_eq!(eigen_multiplicity(&op, c(0.5, 0.0)), 2);
        assert_eq!(eigen_multiplicity(&op, c(0.25, 0.0)), 0);
        let z = ZeroMultiset::new(vec![(c(2.0, 0.0), 3)], SetKind::Zeros).unwrap();
        assert_eq!(eigen_multiplicity(&DiagonalOperator::from_zeros(&z), c(0.5, 0.0)), 3);
    }

    #[test]
    fn norm_examples() {
        let op = DiagonalOperator::from_diagonal(vec![c(0.5, 0.0), c(-0.25, 0.0)], SetKind::Zeros).unwrap();
        assert_eq!(operator_norm(&op), 0.5);
        assert_eq!(operator_norm(&harmonic(100, 1)), 1.0);
        assert_eq!(operator_norm(&DiagonalOperator::from_zeros(&ZeroMultiset::empty(SetKind::Zeros))), 0.0);
    }

    #[test]
    fn classify_examples() {
        let hs = classify(&harmonic(1000, 1), 8, 0.0).unwrap();
        assert!(hs.is_hilbert_schmidt() && !hs.is_trace_class());
        assert_eq!(hs.p_star, PStar::Exponent(2));
        let tc = classify(&harmonic(1000, 2), 8, 0.0).unwrap();
        assert!(tc.is_trace_class());

        let flat = harmonic(10, 1).with_tail(TailModel::PowerLaw { kappa: 0.0 });
        let cl = classify(&flat, 5, 0.0).unwrap();
        assert_eq!(cl.p_star, PStar::NoneUpTo(5));
        assert!(!cl.is_compact && cl.is_bounded);

        let finite = DiagonalOperator::from_diagonal(vec![c(3.0, 0.0)], SetKind::Zeros).unwrap();
        assert!(classify(&finite, 1, 0.0).unwrap().is_trace_class());
        assert!(classify(&finite, 0, 0.0).is_err());
    }

    #[test]
    fn self_adjoint_tracks_imaginary_parts() {
        let real = DiagonalOperator::from_diagonal(vec![c(0.1, 0.0), c(-0.2, 0.0)], SetKind::Zeros).unwrap();
        assert!(classify(&real, 2, 0.0).unwrap().is_self_adjoint);
        let cplx = DiagonalOperator::from_diagonal(vec![c(0.1, 1e-9)], SetKind::Zeros).unwrap();
        assert!(!classify(&cplx, 2, 0.0).unwrap().is_self_adjoint);
        assert!(classify(&cplx, 2, 1e-8).unwrap().is_self_adjoint);
    }

    #[test]
    fn slope_of_exact_power_law() {
        let v: Vec<f64> = (1..=1000).map(|n| 3.0 * (n as f64).powf(-1.25)).collect();
        assert!((power_law_slope(&v, 10, 1000).unwrap() + 1.25).abs() < 1e-12);
        assert!(power_law_slope(&v, 10, 10).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn nonzero() -> impl Strategy<Value = Complex64> {
            (0.1f64..10.0, 0.0..std::f64::consts::TAU).prop_map(|(m, a)| Complex64::from_polar(m, a))
        }

        proptest! {
            #[test]
            fn multiplicities_survive(vals in prop::collection::vec((nonzero(), 1u32..4), 0..12)) {
                // distinct values so counts are per-entry
                let mut seen = std::collections::HashSet::new();
                let vals: Vec<_> = vals.into_iter()
                    .filter(|(v, _)| seen.insert((v.re.to_bits(), v.im.to_bits())))
                    .collect();
                let z = ZeroMultiset::new(vals.clone(), SetKind::Zeros).unwrap();
                let op = DiagonalOperator::from_zeros(&z);
                for (v, m) in vals {
                    prop_assert_eq!(eigen_multiplicity(&op, v.inv()), m as usize);
                }
            }

            #[test]
            fn classification_is_monotone(kappa in 0.05f64..3.0, p_max in 1u32..10) {
                let op = harmonic(5, 1).with_tail(TailModel::PowerLaw { kappa });
                let cl = classify(&op, p_max, 0.0).unwrap();
                if let PStar::Exponent(p) = cl.p_star {
                    for q in p..=p_max + 3 {
                        prop_assert!(cl.in_ideal(q));
                    }
                    if p > 1 {
                        prop_assert!(!cl.in_ideal(p - 1));
                    }
                }
            }

            #[test]
            fn reciprocal_round_trip(vals in prop::collection::vec(nonzero(), 0..12)) {
                let op = DiagonalOperator::from_diagonal(vals.clone(), SetKind::Zeros).unwrap();
                let back = DiagonalOperator::from_zeros(&op.reciprocal_multiset());
                for (a, b) in back.diagonal().iter().zip(&vals) {
                    prop_assert!((a - b).norm() <= 1e-15 * b.norm());
                }
            }
        }
    }
}
