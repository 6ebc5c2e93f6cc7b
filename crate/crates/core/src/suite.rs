//! The ten acceptance criteria as report-producing functions, shared by the
//! `verify-all` subcommand and the acceptance test target.

use std::f64::consts::PI;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bergman::{
    gamma_asymptotic_fit, shift_ideal_certify, shift_weights, translation_check, truncation_norm_checks,
    weight_norm_sq, weight_norm_sq_quadrature, BergmanParams, ShiftTruncation,
};
use crate::error::{Error, Result};
use crate::ffcurves::{curve_zeta_det_form, load_curve, rational_value_exact, weil_rh_check, zeta_series, LocalZeta};
use crate::opmodel::{classify, power_law_slope, DiagonalOperator, SetKind, TailModel, ZeroMultiset};
use crate::recon::oracle::{gamma_oracle, xi_oracle, zeta_oracle};
use crate::recon::{
    euler_product_det, gamma_operator, gamma_reconstruct_with, hadamard_reconstruct, load_zero_dataset,
    rational_reconstruct, rel_err, sinc_oracle, xi_reconstruct, HadamardData, ZeroDataset, ZetaReconstructor,
    ZetaTerms,
};
use crate::regdet::dense::{det_p_routes, det_trace_relation_check, exp_trace_identity_check, DenseMatrix};
use crate::report::{Report, Row};

/// Shift weights `(n+1) c_{n+1} / c_n` at 40 digits: lines `alpha n gamma_n`.
const SHIFT_WEIGHT_TABLE: &str = include_str!("../data/shift_weights_hp.txt");

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "determinant identities"),
    (2, "Bergman weights and shift"),
    (3, "Gamma reconstruction"),
    (4, "Euler product"),
    (5, "xi reconstruction"),
    (6, "zeta three-determinant formula"),
    (7, "Hadamard reconstruction"),
    (8, "curve zeta functions"),
    (9, "trace-ideal classification"),
    (10, "self-adjointness predicate"),
];

/// Directory holding the shipped fixtures.
pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub zeros_path: PathBuf,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            zeros_path: fixtures_dir().join("zeros_100k.txt"),
            seed: 20240917,
        }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn label_of(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Runs criterion `k` (1-based).
pub fn criterion(k: u8, cfg: &SuiteConfig) -> Result<Report> {
    match k {
        1 => determinant_identities(cfg.seed),
        2 => bergman_suite(cfg.seed),
        3 => gamma_suite(),
        4 => euler_suite(),
        5 => xi_suite(&load_zero_dataset(&cfg.zeros_path)?),
        6 => zeta_suite(&load_zero_dataset(&cfg.zeros_path)?),
        7 => hadamard_suite(),
        8 => curve_suite(cfg.seed),
        9 => classification_suite(),
        10 => self_adjoint_suite(&load_zero_dataset(&cfg.zeros_path)?),
        _ => Err(Error::Invalid(format!("no criterion {k}; valid range is 1..=10"))),
    }
}

/// Runs the selected criteria; an error inside one becomes a failing row.
pub fn run_all(cfg: &SuiteConfig, which: &[u8]) -> Report {
    let mut report = Report::new("verify-all");
    report.input("seed", cfg.seed);
    report.input("zeros", cfg.zeros_path.display().to_string());
    report.input("criteria", which);
    for &k in which {
        match criterion(k, cfg) {
            Ok(r) => report.absorb(&format!("c{k}/"), r),
            Err(e) => report.push(Row::flag(format!("c{k}/error: {e}"), false)),
        }
    }
    report
}

fn determinant_identities(seed: u64) -> Result<Report> {
    let mut r = Report::new("criterion-1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trace_worst = [0.0f64; 4];
    let mut exp_worst = 0.0f64;
    for dim in 2..=6 {
        for n in 1..=4u32 {
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let a = DenseMatrix::random(dim, rng.gen_range(0.2..1.5), &mut rng)?;
                let mu = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                worst = worst.max(det_p_routes(&a, n, mu)?.discrepancy);
                let tr = det_trace_relation_check(&a, mu, n)?;
                trace_worst[n as usize - 1] = trace_worst[n as usize - 1].max(tr.discrepancy);
                // |t| rho(A) <= 1/2
                let t = Complex64::from_polar(
                    rng.gen_range(0.0..0.5) / a.spectral_radius().max(1e-300),
                    rng.gen_range(0.0..2.0 * PI),
                );
                exp_worst = exp_worst.max(exp_trace_identity_check(&a, t, 60)?.discrepancy);
            }
            r.push(Row::check(format!("det_{n} routes dim {dim}"), worst, None, worst, 1e-10));
        }
    }
    for (i, w) in trace_worst.iter().enumerate() {
        r.push(Row::check(format!("trace relation n={}", i + 1), *w, None, *w, 1e-10));
    }
    r.push(Row::check("exp-trace identity", exp_worst, None, exp_worst, 1e-10));
    Ok(r)
}

/// `(alpha, n, gamma_n)` rows of the shipped high-precision table.
pub fn shift_weight_table() -> Vec<(f64, usize, f64)> {
    SHIFT_WEIGHT_TABLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            (
                f[0].parse().expect("alpha"),
                f[1].parse().expect("n"),
                f[2].parse().expect("gamma"),
            )
        })
        .collect()
}

fn bergman_suite(seed: u64) -> Result<Report> {
    let mut r = Report::new("criterion-2");
    for alpha in [0.3, 0.5, 1.0] {
        let mut worst = 0.0f64;
        for n in 0..=10 {
            let exact = weight_norm_sq(n, alpha)?;
            let quad = weight_norm_sq_quadrature(n, alpha, 1e-10)?;
            worst = worst.max((quad - exact).abs() / exact);
        }
        r.push(Row::check(format!("norm vs quadrature alpha={alpha}"), worst, None, worst, 1e-6));
    }

    let table = shift_weight_table();
    let mut alphas: Vec<f64> = table.iter().map(|t| t.0).collect();
    alphas.dedup();
    for alpha in alphas {
        let rows: Vec<_> = table.iter().filter(|t| t.0 == alpha).collect();
        let weights = shift_weights(BergmanParams::new(alpha)?, rows.len())?;
        let worst = rows
            .iter()
            .map(|&&(_, n, g)| (weights[n] - g).abs() / g)
            .fold(0.0f64, f64::max);
        r.push(Row::check(format!("gamma_n routes n<=1000 alpha={alpha}"), worst, None, worst, 1e-12));
    }

    for alpha in [0.4, 0.5, 1.0] {
        let slope = gamma_asymptotic_fit(BergmanParams::new(alpha)?, 1000, 10_000)?;
        let target = 1.0 - 1.0 / alpha;
        r.push(Row::check(
            format!("gamma slope alpha={alpha}"),
            slope,
            Some(target.into()),
            (slope - target).abs(),
            0.03,
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xB);
    for alpha in [0.3, 0.5, 1.0] {
        let params = BergmanParams::new(alpha)?;
        let tr = ShiftTruncation::new(params, 2000)?;
        let rep = truncation_norm_checks(&tr, 20)?;
        let ratio = rep.rows.iter().map(|row| row.norm / row.bound).fold(0.0f64, f64::max);
        r.push(Row::check(format!("max ||T^k||/bound alpha={alpha}"), ratio, None, ratio, 1.0));

        let mut worst = 0.0f64;
        for _ in 0..5 {
            let coeffs: Vec<Complex64> = (0..4).map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
            let s = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            worst = worst.max(translation_check(&tr, s, &coeffs)?.discrepancy);
        }
        r.push(Row::check(format!("translation cubic alpha={alpha}"), worst, None, worst, 1e-10));
    }
    Ok(r)
}

fn gamma_suite() -> Result<Report> {
    let mut r = Report::new("criterion-3");
    let op = gamma_operator(1_000_000)?;
    for z in [c(0.5, 0.0), c(1.0, 0.0), c(1.5, 0.0), c(2.0, 1.0)] {
        let v = gamma_reconstruct_with(&op, z)?.value;
        r.push(Row::compare(format!("Gamma({})", label_of(z)), v, gamma_oracle(z)?, 1e-5));
        let next = gamma_reconstruct_with(&op, z + 1.0)?.value;
        let ratio = next / (z * v);
        r.push(Row::compare(format!("Gamma(z+1)/(z Gamma(z)) z={}", label_of(z)), ratio, c(1.0, 0.0), 2e-5));
    }
    Ok(r)
}

fn euler_suite() -> Result<Report> {
    let mut r = Report::new("criterion-4");
    let v2 = euler_product_det(c(2.0, 0.0), 10_000)?;
    r.push(Row::compare("Euler s=2 vs pi^2/6", v2, c(PI * PI / 6.0, 0.0), 5e-5));
    let v3 = euler_product_det(c(3.0, 0.0), 10_000)?;
    r.push(Row::compare("Euler s=3 vs zeta oracle", v3, zeta_oracle(c(3.0, 0.0))?, 1e-6));
    Ok(r)
}

fn xi_grid() -> [Complex64; 6] {
    [c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(0.5, 1.0), c(0.5, 5.0)]
}

fn xi_checks(r: &mut Report, data: &ZeroDataset, n: usize, tol: f64, sym_tol: f64) -> Result<()> {
    let eval = |s: Complex64| xi_reconstruct(s, data, n).map(|x| x.value);
    for s in xi_grid() {
        let v = eval(s)?;
        r.push(Row::compare(format!("N={n} xi({})", label_of(s)), v, xi_oracle(s)?, tol));
        let w = eval(1.0 - s)?;
        r.push(Row::check(format!("N={n} xi symmetry s={}", label_of(s)), w, Some(v.into()), rel_err(w, v), sym_tol));
    }
    let at0 = eval(c(0.0, 0.0))?;
    r.push(Row::check(format!("N={n} xi(0) exact"), at0, Some(0.5.into()), (at0 - 0.5).norm(), 0.0));
    Ok(())
}

fn xi_suite(data: &ZeroDataset) -> Result<Report> {
    let mut r = Report::new("criterion-5");
    r.input("zeros_available", data.count());
    xi_checks(&mut r, data, 100_000, 1e-3, 2e-3)?;
    xi_checks(&mut r, data, 1_000, 3e-2, 3e-2)?;
    Ok(r)
}

fn zeta_suite(data: &ZeroDataset) -> Result<Report> {
    let mut r = Report::new("criterion-6");
    let terms = ZetaTerms {
        zeros: 100_000,
        gamma_terms: 1_000_000,
    };
    let rec = ZetaReconstructor::new(data, terms)?;
    for s in [c(2.0, 0.0), c(3.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)] {
        let v = rec.zeta(s)?.value;
        r.push(Row::compare(format!("zeta({})", label_of(s)), v, zeta_oracle(s)?, 2e-3));
    }
    let at_m2 = rec.zeta(c(-2.0, 0.0))?.value;
    r.push(Row::check("zeta(-2) exact zero", at_m2, Some(0.0.into()), at_m2.norm(), 0.0));
    let v2 = rec.zeta(c(2.0, 0.0))?.value;
    let e2 = euler_product_det(c(2.0, 0.0), 10_000)?;
    r.push(Row::compare("zeta(2) determinant vs Euler product", v2, e2, 2e-3 + 5e-5));
    Ok(r)
}

fn hadamard_suite() -> Result<Report> {
    let mut r = Report::new("criterion-7");
    let n = 1_000_000;
    let sinc = HadamardData::sinc(n)?;
    for z in [c(0.5, 0.0), c(1.5, 0.0), c(0.0, 2.5)] {
        let v = hadamard_reconstruct(&sinc, z, 2 * n)?.value;
        r.push(Row::compare(format!("sinc({})", label_of(z)), v, sinc_oracle(z), 1e-5));
    }
    for k in [1.0, 2.0, -3.0] {
        let v = hadamard_reconstruct(&sinc, c(k, 0.0), 2 * n)?.value;
        r.push(Row::check(format!("sinc({k}) exact zero"), v, Some(0.0.into()), v.norm(), 0.0));
    }
    let lin = HadamardData::one_minus_z()?;
    let empty = ZeroMultiset::empty(SetKind::Poles);
    for z in [c(0.25, 0.0), c(-3.0, 2.0), c(1.0, 0.0), c(7.5, -0.5)] {
        let h = hadamard_reconstruct(&lin, z, 1)?.value;
        let q = rational_reconstruct(&lin.zeros, &empty, 0, c(1.0, 0.0), z)?;
        let same = h.re.to_bits() == q.re.to_bits() && h.im.to_bits() == q.im.to_bits();
        r.push(Row::check(format!("1-z p=0 bitwise z={}", label_of(z)), h, Some(q.into()), if same { 0.0 } else { 1.0 }, 0.0));
    }
    let e = HadamardData::exp_one_minus_z()?;
    for z in [c(0.5, 0.0), c(-1.0, 1.0)] {
        let v = hadamard_reconstruct(&e, z, 1)?.value;
        r.push(Row::compare(format!("e^z(1-z) z={}", label_of(z)), v, z.exp() * (1.0 - z), 1e-14));
    }
    Ok(r)
}

fn exact_row(label: String, got: &[BigRational], want: &[BigRational]) -> Row {
    Row::flag(label, got == want)
}

fn curve_suite(seed: u64) -> Result<Report> {
    let mut r = Report::new("criterion-8");
    let dir = fixtures_dir();

    let p1 = LocalZeta::from_curve(&load_curve(dir.join("p1_f3.curve"))?, 4)?;
    // 1 / ((1-T)(1-3T)) has coefficients (3^{n+1} - 1) / 2
    let want: Vec<BigRational> = (0..=4u32)
        .map(|n| BigRational::from_integer((BigInt::from(3).pow(n + 1) - 1) / 2))
        .collect();
    r.push(exact_row("P1/F3 zeta coefficients".into(), &zeta_series(&p1.counts), &want));
    r.push(Row::flag("P1/F3 P(T) = 1", p1.numerator == vec![BigInt::one()]));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xC);
    for (file, expect) in [("e_f3.curve", vec![1, 0, 3]), ("e_f5.curve", vec![1, -2, 5])] {
        let lz = LocalZeta::from_curve(&load_curve(dir.join(file))?, 4)?;
        let want: Vec<BigInt> = expect.iter().map(|&a| BigInt::from(a)).collect();
        r.push(Row::flag(format!("{file} P(T) = {expect:?}"), lz.numerator == want));
        let weil = weil_rh_check(&lz, 1e-12);
        r.push(Row::check(
            format!("{file} |alpha_i| - sqrt q"),
            weil.max_deviation,
            None,
            weil.max_deviation,
            1e-12,
        ));
        let bounds = lz.weil_bound_holds();
        r.push(Row::flag(format!("{file} Weil bound n<=4"), bounds.len() == 4 && bounds.iter().all(|&b| b)));
        r.push(Row::flag(format!("{file} functional equation"), lz.functional_equation_holds()));
        let recount: Vec<u64> = lz.counts_from_numerator(4).iter().map(|b| b.to_u64().unwrap_or(0)).collect();
        r.push(Row::flag(format!("{file} counts from P(T)"), recount == lz.counts));
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let s = c(rng.gen_range(1.5..3.0), rng.gen_range(-10.0..10.0));
            worst = worst.max(curve_zeta_det_form(&lz, s)?.discrepancy);
        }
        r.push(Row::check(format!("{file} det form vs rational, 20 points"), worst, None, worst, 1e-10));
        for s in [2u32, 3] {
            let v = curve_zeta_det_form(&lz, c(s as f64, 0.0))?.value;
            let t = BigRational::new(BigInt::one(), BigInt::from(lz.q).pow(s));
            let exact = rational_value_exact(&lz, &t)?.to_f64().unwrap_or(f64::NAN);
            r.push(Row::compare(format!("{file} det form s={s} vs exact"), v, c(exact, 0.0), 1e-10));
        }
    }
    Ok(r)
}

/// Fits `kappa` from the stored diagonal and classifies under it.
fn fitted_class(values: Vec<f64>) -> Result<crate::opmodel::IdealClass> {
    let n = values.len();
    let kappa = -power_law_slope(&values, n / 10, n)?;
    let op = DiagonalOperator::from_diagonal(values.into_iter().map(|v| c(v, 0.0)).collect(), SetKind::Zeros)?
        .with_tail(TailModel::PowerLaw { kappa });
    classify(&op, 4, 1e-6)
}

fn classification_suite() -> Result<Report> {
    let mut r = Report::new("criterion-9");
    let n = 100_000;
    let harmonic = fitted_class((1..=n).map(|k| 1.0 / k as f64).collect())?;
    r.push(Row::flag("diag(1/n) Hilbert-Schmidt", harmonic.is_hilbert_schmidt()));
    r.push(Row::flag("diag(1/n) not trace class", !harmonic.is_trace_class()));
    let square = fitted_class((1..=n).map(|k| 1.0 / (k as f64 * k as f64)).collect())?;
    r.push(Row::flag("diag(1/n^2) trace class", square.is_trace_class()));
    for alpha in [0.35, 0.4, 0.45, 0.55, 0.65, 0.7] {
        for p in 1..=3u32 {
            let rep = shift_ideal_certify(BergmanParams::new(alpha)?, p, 20_000)?;
            let expected = alpha < p as f64 / (p as f64 + 1.0);
            r.push(Row::flag(
                format!("shift in J_{p} alpha={alpha}: {}", if expected { "yes" } else { "no" }),
                rep.in_ideal == expected,
            ));
        }
    }
    Ok(r)
}

fn self_adjoint_suite(data: &ZeroDataset) -> Result<Report> {
    let mut r = Report::new("criterion-10");
    let n = data.count();
    let clean = DiagonalOperator::from_zeros(&data.xi_hat_zeros(n)?).with_tail(TailModel::PowerLaw { kappa: 1.0 });
    r.push(Row::flag("fixture zeros: self-adjoint", classify(&clean, 2, 0.0)?.is_self_adjoint));
    let mut values: Vec<Complex64> = clean.source().expanded().collect();
    values.insert(values.len() / 2, c(values[values.len() / 2].re + 0.25, 0.5));
    let tainted =
        DiagonalOperator::from_zeros(&ZeroMultiset::zeros(values)?).with_tail(TailModel::PowerLaw { kappa: 1.0 });
    r.push(Row::flag("one synthetic complex height: not self-adjoint", !classify(&tainted, 2, 0.0)?.is_self_adjoint));
    Ok(r)
}
