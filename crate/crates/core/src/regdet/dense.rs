//! Small dense matrices used as brute-force oracles for the determinant
//! identities: `det_n` via `det(I + R_n(A))` versus the eigenvalue product,
//! the trace relation to the Fredholm determinant, and the exp-trace formula.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::regdet_term;

/// Largest dimension accepted by the dense oracles.
pub const ORACLE_BOUND: usize = 64;

/// Relative agreement demanded between the two `det_n` routes.
pub const ROUTE_TOLERANCE: f64 = 1e-10;

/// Default number of trace-series terms in [`exp_trace_identity_check`].
pub const EXP_TRACE_TERMS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    m: DMatrix<Complex64>,
}

impl DenseMatrix {
    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::Invalid(format!(
                "matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() > ORACLE_BOUND {
            return Err(Error::Bound(format!(
                "dimension {} exceeds oracle bound {ORACLE_BOUND}",
                m.nrows()
            )));
        }
        Ok(Self { m })
    }

    /// Row-major entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Invalid(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::from_matrix(DMatrix::zeros(dim, dim))
    }

    pub fn diagonal(values: &[Complex64]) -> Result<Self> {
        let n = values.len();
        let mut m = DMatrix::zeros(n, n);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        Self::from_matrix(m)
    }

    /// Entries uniform in the unit square, rescaled to the given spectral radius.
    pub fn random<R: Rng>(dim: usize, spectral_radius: f64, rng: &mut R) -> Result<Self> {
        let m = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let a = Self::from_matrix(m)?;
        let rho = a.spectral_radius();
        Ok(Self {
            m: a.m * Complex64::new(spectral_radius / rho, 0.0),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn scaled(&self, mu: Complex64) -> Self {
        Self { m: &self.m * mu }
    }

    /// Eigenvalues from the complex Schur form (Hessenberg QR iteration).
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let schur = self.m.clone().schur();
        let (_, t) = schur.unpack();
        (0..t.nrows()).map(|i| t[(i, i)]).collect()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues().iter().map(|l| l.norm()).fold(0.0, f64::max)
    }

    /// LU determinant with partial pivoting.
    pub fn det(&self) -> Complex64 {
        self.m.clone().lu().determinant()
    }

    pub fn trace(&self) -> Complex64 {
        self.m.trace()
    }

    fn identity(&self) -> DMatrix<Complex64> {
        DMatrix::identity(self.dim(), self.dim())
    }
}

/// `R_n(A) = (I + A) exp(sum_{j=1}^{n-1} (-1)^j A^j / j) - I`.
pub fn rn_matrix(a: &DenseMatrix, n: u32) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let id = a.identity();
    let mut poly = DMatrix::zeros(a.dim(), a.dim());
    let mut pow = id.clone();
    for j in 1..n {
        pow = &pow * &a.m;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        poly += &pow * Complex64::new(sign / j as f64, 0.0);
    }
    let r = (&id + &a.m) * poly.exp() - &id;
    DenseMatrix::from_matrix(r)
}

/// `det_n(I + mu A)` as the eigenvalue product of [`regdet_term`], after
/// checking it against `det(I + R_n(mu A))` to [`ROUTE_TOLERANCE`].
pub fn matrix_det_p(a: &DenseMatrix, n: u32, mu: Complex64) -> Result<Complex64> {
    let routes = det_p_routes(a, n, mu)?;
    if routes.discrepancy > ROUTE_TOLERANCE {
        return Err(Error::Consistency {
            what: format!("det_{n} eigenvalue product vs det(I + R_{n})"),
            discrepancy: routes.discrepancy,
            tolerance: ROUTE_TOLERANCE,
        });
    }
    Ok(routes.rhs)
}

/// Two evaluations of one quantity and their relative discrepancy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RouteReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub discrepancy: f64,
}

impl RouteReport {
    fn new(lhs: Complex64, rhs: Complex64) -> Self {
        let scale = lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE);
        Self {
            lhs,
            rhs,
            discrepancy: (lhs - rhs).norm() / scale,
        }
    }
}

/// lhs: `det(I + R_n(mu A))`; rhs: `prod_k regdet_term(n, lambda_k, mu)`.
pub fn det_p_routes(a: &DenseMatrix, n: u32, mu: Complex64) -> Result<RouteReport> {
    let rn = rn_matrix(&a.scaled(mu), n)?;
    let lhs = DenseMatrix::from_matrix(a.identity() + rn.m)?.det();
    let mut rhs = Complex64::new(1.0, 0.0);
    for lam in a.eigenvalues() {
        rhs *= regdet_term(n, lam, mu)?;
    }
    Ok(RouteReport::new(lhs, rhs))
}

/// `det_n(I + mu A)` against `det(I + mu A) exp(sum_{j<n} (-1)^j Tr((mu A)^j) / j)`.
pub fn det_trace_relation_check(a: &DenseMatrix, mu: Complex64, n: u32) -> Result<RouteReport> {
    let b = a.scaled(mu);
    let rn = rn_matrix(&b, n)?;
    let lhs = DenseMatrix::from_matrix(a.identity() + rn.m)?.det();
    let fredholm = DenseMatrix::from_matrix(a.identity() + &b.m)?.det();
    let mut exponent = Complex64::new(0.0, 0.0);
    let mut pow = a.identity();
    for j in 1..n {
        pow = &pow * &b.m;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        exponent += pow.trace() * (sign / j as f64);
    }
    Ok(RouteReport::new(lhs, fredholm * exponent.exp()))
}

/// lhs: `exp(sum_{n=1}^{terms} t^n Tr(A^n) / n)`; rhs: `1 / det(I - t A)`.
///
/// Needs `|t| rho(A) < 1`.
pub fn exp_trace_identity_check(a: &DenseMatrix, t: Complex64, terms: usize) -> Result<RouteReport> {
    let rho = a.spectral_radius();
    if t.norm() * rho >= 1.0 {
        return Err(Error::Domain(format!(
            "|t| * spectral radius = {} must be < 1",
            t.norm() * rho
        )));
    }
    let b = a.scaled(t);
    let mut exponent = Complex64::new(0.0, 0.0);
    let mut pow = a.identity();
    for n in 1..=terms {
        pow = &pow * &b.m;
        exponent += pow.trace() / n as f64;
    }
    let det = DenseMatrix::from_matrix(a.identity() - &b.m)?.det();
    Ok(RouteReport::new(exponent.exp(), det.inv()))
}
