//! The `zetaquant` command line.
//!
//! Every subcommand assembles a [`Report`]; the exit code is 0 when all
//! checked rows pass, 1 when one fails or a computation errors, and 2 for
//! usage and input errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bergman::{
    gamma_asymptotic_fit, shift_weights, translation_check, truncation_norm_checks, weight_norm_sq,
    weight_norm_sq_quadrature, BergmanParams, ShiftTruncation,
};
use crate::error::{Error, Result};
use crate::ffcurves::{curve_zeta_det_form, load_curve, weil_rh_check, LocalZeta};
use crate::opmodel::{DiagonalOperator, SetKind, TailModel};
use crate::recon::oracle::{gamma_oracle, xi_oracle, zeta_oracle};
use crate::recon::{
    euler_product_det, gamma_operator, gamma_reconstruct_with, hadamard_reconstruct, load_zero_dataset, sinc_oracle,
    xi_reconstruct, HadamardData, ZetaReconstructor, ZetaTerms,
};
use crate::regdet::dense::{det_p_routes, DenseMatrix, ORACLE_BOUND};
use crate::regdet::{det_p, Pairing, RegDetRequest};
use crate::report::{Report, Row};
use crate::suite::{self, SuiteConfig, CRITERIA};

#[derive(Debug, Parser)]
#[command(name = "zetaquant", version, about = "Regularized determinants and the reconstructions built on them")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Overrides the default tolerance of the checked rows.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for randomized oracle inputs.
    #[arg(long, global = true, default_value_t = 20240917)]
    seed: u64,
    /// Leave the wall-clock runtime out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Regularized determinant of a diagonal operator.
    Regdet(RegdetArgs),
    /// Norm, shift-weight and spectral checks on the Bergman spaces.
    Bergman(BergmanArgs),
    /// Gamma from its determinant form, against the Lanczos oracle.
    Gamma(GammaArgs),
    /// xi from a zero dataset.
    Xi(XiArgs),
    /// zeta from the three-determinant formula.
    Zeta(ZetaArgs),
    /// Truncated Euler product of Fredholm determinants.
    Euler(EulerArgs),
    /// Named Hadamard fixtures.
    Hadamard(HadamardArgs),
    /// Point counts, P(T), Weil checks and determinant values for a curve.
    CurveZeta(CurveArgs),
    /// The full acceptance suite.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args)]
struct RegdetArgs {
    /// Comma-separated diagonal entries, e.g. `0.5,1/4,0.1+0.2i`.
    #[arg(long, allow_hyphen_values = true)]
    diag: Option<String>,
    /// File with one diagonal entry per line (`#` comments allowed).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    order: u32,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    z: String,
    /// Truncation; defaults to every entry.
    #[arg(long)]
    terms: Option<usize>,
    /// Tail model: `finite`, `power:KAPPA` or `declared:P`.
    #[arg(long, default_value = "finite")]
    tail: String,
    #[arg(long, value_enum, default_value_t = PairingArg::AsStored)]
    pairing: PairingArg,
    /// Also compare seeded random matrices through the two dense routes.
    #[arg(long, default_value_t = 0)]
    random_matrices: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairingArg {
    AsStored,
    Conjugate,
    Functional,
}

impl From<PairingArg> for Pairing {
    fn from(p: PairingArg) -> Self {
        match p {
            PairingArg::AsStored => Pairing::AsStored,
            PairingArg::Conjugate => Pairing::ConjugatePaired,
            PairingArg::Functional => Pairing::FunctionalPaired,
        }
    }
}

#[derive(Debug, Args)]
struct BergmanArgs {
    /// Comma-separated alpha grid.
    #[arg(long, default_value = "0.3,0.5,1.0")]
    alpha: String,
    /// Size of the shift truncation.
    #[arg(long, default_value_t = 2000)]
    terms: usize,
    /// Highest power in the norm checks.
    #[arg(long, default_value_t = 20)]
    order: usize,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long, default_value = "0.5,1,1.5,2+i", allow_hyphen_values = true)]
    points: String,
    #[arg(long, default_value_t = 1_000_000)]
    terms: usize,
}

#[derive(Debug, Args)]
struct XiArgs {
    #[arg(long)]
    zeros: PathBuf,
    /// Number of zero heights; defaults to the whole file.
    #[arg(long)]
    terms: Option<usize>,
    #[arg(long, default_value = "0.5,1,2,3,0.5+1i,0.5+5i", allow_hyphen_values = true)]
    points: String,
}

#[derive(Debug, Args)]
struct ZetaArgs {
    #[arg(long)]
    zeros: PathBuf,
    #[arg(long)]
    terms: Option<usize>,
    /// Size of the Gamma-factor operator.
    #[arg(long, default_value_t = 1_000_000)]
    gamma_terms: usize,
    #[arg(long, default_value = "2,3,0,-1", allow_hyphen_values = true)]
    points: String,
}

#[derive(Debug, Args)]
struct EulerArgs {
    #[arg(long, default_value = "2,3", allow_hyphen_values = true)]
    points: String,
    /// Prime bound.
    #[arg(long, default_value_t = 10_000)]
    terms: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FixtureFn {
    Sinc,
    OneMinusZ,
    ExpOneMinusZ,
}

#[derive(Debug, Args)]
struct HadamardArgs {
    #[arg(long, value_enum)]
    function: FixtureFn,
    #[arg(long, default_value = "0.5,1.5,2.5i", allow_hyphen_values = true)]
    points: String,
    /// Zero pairs kept for `sinc`.
    #[arg(long, default_value_t = 1_000_000)]
    terms: usize,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long)]
    curve: PathBuf,
    /// Number of point counts `Y_1..Y_M`; defaults to `max(4, 2g + 1)`.
    #[arg(long)]
    terms: Option<u32>,
    /// Points `s` for the determinant form.
    #[arg(long, default_value = "2,3,1.5+2i", allow_hyphen_values = true)]
    points: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    zeros: Option<PathBuf>,
    /// Comma-separated subset of criteria 1..10.
    #[arg(long)]
    criteria: Option<String>,
}

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, with `p/q` rationals allowed for
/// the real part.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Invalid(format!("not a complex number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let real = |t: &str| -> Result<f64> {
        if let Some((a, b)) = t.split_once('/') {
            let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            return Ok(a / b);
        }
        t.parse().map_err(|_| bad())
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => real(t)?,
    };
    Ok(Complex64::new(real(re)?, im))
}

fn parse_list(text: &str) -> Result<Vec<Complex64>> {
    text.split(',').filter(|t| !t.trim().is_empty()).map(parse_complex).collect()
}

fn parse_reals(text: &str) -> Result<Vec<f64>> {
    parse_list(text)?
        .into_iter()
        .map(|z| {
            if z.im == 0.0 {
                Ok(z.re)
            } else {
                Err(Error::Invalid(format!("expected a real number, got {z}")))
            }
        })
        .collect()
}

fn parse_tail(text: &str) -> Result<TailModel> {
    let bad = || Error::Invalid(format!("tail model must be finite, power:KAPPA or declared:P, got {text:?}"));
    match text.split_once(':') {
        None if text == "finite" => Ok(TailModel::Finite),
        Some(("power", k)) => Ok(TailModel::PowerLaw {
            kappa: k.parse().map_err(|_| bad())?,
        }),
        Some(("declared", p)) => Ok(TailModel::Declared {
            p_star: p.parse().map_err(|_| bad())?,
        }),
        _ => Err(bad()),
    }
}

fn label(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

/// Runs the tool on `argv` (program name first), printing to stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let start = Instant::now();
    let result = dispatch(&cli);
    match result {
        Ok(mut report) => {
            if !cli.common.no_timing {
                report.runtime_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = match cli.common.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            let _ = out.write_all(text.as_bytes());
            for row in report.failed_rows() {
                let _ = writeln!(
                    err,
                    "FAIL {}: discrepancy {:e} > tolerance {:e}",
                    row.label,
                    row.discrepancy.unwrap_or(f64::NAN),
                    row.tolerance.unwrap_or(f64::NAN)
                );
            }
            i32::from(!report.pass)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Io { .. } | Error::Parse { .. } | Error::Invalid(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let tol = cli.common.tol;
    if let Some(t) = tol {
        if !(t >= 0.0) {
            return Err(Error::Invalid(format!("--tol must be nonnegative, got {t}")));
        }
    }
    match &cli.command {
        Command::Regdet(a) => regdet_cmd(a, tol, cli.common.seed),
        Command::Bergman(a) => bergman_cmd(a, tol, cli.common.seed),
        Command::Gamma(a) => gamma_cmd(a, tol),
        Command::Xi(a) => xi_cmd(a, tol),
        Command::Zeta(a) => zeta_cmd(a, tol),
        Command::Euler(a) => euler_cmd(a, tol),
        Command::Hadamard(a) => hadamard_cmd(a, tol),
        Command::CurveZeta(a) => curve_cmd(a, tol, cli.common.seed),
        Command::VerifyAll(a) => verify_cmd(a, cli.common.seed),
    }
}

fn read_diagonal(a: &RegdetArgs) -> Result<Vec<Complex64>> {
    match (&a.diag, &a.file) {
        (Some(d), None) => parse_list(d),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.clone(),
                msg: e.to_string(),
            })?;
            let mut out = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                out.push(parse_complex(line).map_err(|e| Error::Parse {
                    path: path.clone(),
                    line: i + 1,
                    msg: e.to_string(),
                })?);
            }
            Ok(out)
        }
        _ => Err(Error::Invalid("give exactly one of --diag and --file".into())),
    }
}

fn regdet_cmd(a: &RegdetArgs, tol: Option<f64>, seed: u64) -> Result<Report> {
    let diag = read_diagonal(a)?;
    let z = parse_complex(&a.z)?;
    let tail = parse_tail(&a.tail)?;
    let mut r = Report::new("regdet");
    r.input("entries", diag.len());
    r.input("order", a.order);
    r.input("z", [z.re, z.im]);
    r.input("tail", tail);
    let op = DiagonalOperator::from_diagonal(diag.clone(), SetKind::Zeros)?.with_tail(tail);
    let n = a.terms.unwrap_or(op.len());
    let req = RegDetRequest::new(a.order, z, n).pairing(a.pairing.into());
    let d = det_p(&op, &req)?;
    let label = format!("det_{}(I - z D)", a.order);
    // small finite diagonals are checked against the dense route
    if tail.is_finite() && (1..=ORACLE_BOUND).contains(&op.len()) {
        let dense = DenseMatrix::diagonal(&diag)?;
        let routes = det_p_routes(&dense, a.order, -z)?;
        let oracle = routes.lhs;
        r.push(Row::compare(label, d.value, oracle, tol.unwrap_or(1e-10)));
    } else {
        r.push(Row::info(label, d.value));
    }
    r.push(Row::info("tail estimate", d.tail_estimate));
    if let Some(i) = d.annihilator {
        r.push(Row::info("annihilating index", i as f64));
    }
    if a.random_matrices > 0 {
        r.input("seed", seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for k in 0..a.random_matrices {
            let dim = rng.gen_range(2..=6);
            let m = DenseMatrix::random(dim, rng.gen_range(0.2..1.5), &mut rng)?;
            let mu = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let routes = det_p_routes(&m, a.order, mu)?;
            r.push(Row::check(
                format!("random {k} dim {dim}: det(I+R_n) vs eigenvalue product"),
                routes.lhs,
                Some(routes.rhs.into()),
                routes.discrepancy,
                tol.unwrap_or(1e-10),
            ));
        }
    }
    Ok(r)
}

fn bergman_cmd(a: &BergmanArgs, tol: Option<f64>, seed: u64) -> Result<Report> {
    let alphas = parse_reals(&a.alpha)?;
    let mut r = Report::new("bergman");
    r.input("alpha", &alphas);
    r.input("terms", a.terms);
    r.input("order", a.order);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for alpha in alphas {
        let params = BergmanParams::new(alpha)?;
        for n in 0..=10u64 {
            let exact = weight_norm_sq(n, alpha)?;
            let quad = weight_norm_sq_quadrature(n, alpha, 1e-10)?;
            r.push(Row::check(
                format!("alpha={alpha} ||z^{n}||^2"),
                exact,
                Some(quad.into()),
                (exact - quad).abs() / quad,
                tol.unwrap_or(1e-6),
            ));
        }
        let weights = shift_weights(params, a.terms.max(2))?;
        r.push(Row::info(format!("alpha={alpha} gamma_0"), weights[0]));
        if a.terms > 1000 {
            let slope = gamma_asymptotic_fit(params, a.terms / 10, a.terms - 1)?;
            r.push(Row::check(
                format!("alpha={alpha} gamma slope"),
                slope,
                Some((1.0 - 1.0 / alpha).into()),
                (slope - (1.0 - 1.0 / alpha)).abs(),
                tol.unwrap_or(0.03),
            ));
        }
        let tr = ShiftTruncation::new(params, a.terms)?;
        let rep = truncation_norm_checks(&tr, a.order)?;
        for row in &rep.rows {
            r.push(Row::check(
                format!("alpha={alpha} ||T^{}|| / bound", row.k),
                row.norm / row.bound,
                None,
                row.norm / row.bound,
                1.0,
            ));
        }
        r.push(Row::flag(format!("alpha={alpha} k-th roots decreasing"), rep.roots_decreasing));
        let coeffs: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let s = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let t = translation_check(&tr, s, &coeffs)?;
        r.push(Row::check(
            format!("alpha={alpha} translation of a cubic"),
            t.discrepancy,
            None,
            t.discrepancy,
            tol.unwrap_or(1e-10),
        ));
    }
    Ok(r)
}

fn gamma_cmd(a: &GammaArgs, tol: Option<f64>) -> Result<Report> {
    let points = parse_list(&a.points)?;
    let mut r = Report::new("gamma");
    r.input("terms", a.terms);
    r.input("points", a.points.as_str());
    let op = gamma_operator(a.terms)?;
    for z in points {
        let rec = gamma_reconstruct_with(&op, z)?;
        let t = tol.unwrap_or_else(|| (4.0 * rec.tail_estimate).max(1e-12));
        r.push(Row::compare(format!("Gamma({})", label(z)), rec.value, gamma_oracle(z)?, t));
    }
    Ok(r)
}

fn xi_cmd(a: &XiArgs, tol: Option<f64>) -> Result<Report> {
    let data = load_zero_dataset(&a.zeros)?;
    let n = a.terms.unwrap_or(data.count());
    let mut r = Report::new("xi");
    r.input("zeros", a.zeros.display().to_string());
    r.input("terms", n);
    for s in parse_list(&a.points)? {
        let rec = xi_reconstruct(s, &data, n)?;
        let oracle = xi_oracle(s)?;
        let t = tol.unwrap_or_else(|| (2.0 * rec.tail_estimate).max(1e-12));
        r.push(Row::compare(format!("xi({})", label(s)), rec.value, oracle, t));
    }
    Ok(r)
}

fn zeta_cmd(a: &ZetaArgs, tol: Option<f64>) -> Result<Report> {
    let data = load_zero_dataset(&a.zeros)?;
    let terms = ZetaTerms {
        zeros: a.terms.unwrap_or(data.count()),
        gamma_terms: a.gamma_terms,
    };
    let mut r = Report::new("zeta");
    r.input("zeros", a.zeros.display().to_string());
    r.input("terms", terms);
    let rec = ZetaReconstructor::new(&data, terms)?;
    for s in parse_list(&a.points)? {
        let v = rec.zeta(s)?;
        let oracle = zeta_oracle(s)?;
        let name = format!("zeta({})", label(s));
        if oracle == Complex64::new(0.0, 0.0) {
            r.push(Row::check(name, v.value, Some(oracle.into()), v.value.norm(), tol.unwrap_or(0.0)));
        } else {
            let t = tol.unwrap_or_else(|| (2.0 * v.tail_estimate).max(1e-12));
            r.push(Row::compare(name, v.value, oracle, t));
        }
    }
    Ok(r)
}

fn euler_cmd(a: &EulerArgs, tol: Option<f64>) -> Result<Report> {
    let mut r = Report::new("euler");
    r.input("prime_bound", a.terms);
    for s in parse_list(&a.points)? {
        let v = euler_product_det(s, a.terms)?;
        // the omitted primes contribute about sum_{p > B} p^{-Re s}
        let b = a.terms as f64;
        let budget = 2.0 * b.powf(1.0 - s.re) / ((s.re - 1.0) * b.ln());
        r.push(Row::compare(format!("Euler({})", label(s)), v, zeta_oracle(s)?, tol.unwrap_or(budget)));
    }
    Ok(r)
}

fn hadamard_cmd(a: &HadamardArgs, tol: Option<f64>) -> Result<Report> {
    let mut r = Report::new("hadamard");
    let points = parse_list(&a.points)?;
    let (data, n, oracle): (HadamardData, usize, fn(Complex64) -> Complex64) = match a.function {
        FixtureFn::Sinc => (HadamardData::sinc(a.terms)?, 2 * a.terms, sinc_oracle),
        FixtureFn::OneMinusZ => (HadamardData::one_minus_z()?, 1, |z| 1.0 - z),
        FixtureFn::ExpOneMinusZ => (HadamardData::exp_one_minus_z()?, 1, |z| z.exp() * (1.0 - z)),
    };
    r.input("function", format!("{:?}", a.function).to_lowercase());
    r.input("terms", n);
    for z in points {
        let rec = hadamard_reconstruct(&data, z, n)?;
        let want = oracle(z);
        let name = format!("f({})", label(z));
        if want == Complex64::new(0.0, 0.0) {
            r.push(Row::check(name, rec.value, Some(want.into()), rec.value.norm(), tol.unwrap_or(0.0)));
        } else {
            let t = tol.unwrap_or(if n > 1 { 1e-5 } else { 1e-14 });
            r.push(Row::compare(name, rec.value, want, t));
        }
    }
    Ok(r)
}

fn curve_cmd(a: &CurveArgs, tol: Option<f64>, seed: u64) -> Result<Report> {
    let curve = load_curve(&a.curve)?;
    let m = a.terms.unwrap_or_else(|| curve.genus_hint.map_or(4, |g| (2 * g + 1).max(4)));
    let lz = LocalZeta::from_curve(&curve, m)?;
    let mut r = Report::new("curve-zeta");
    r.input("curve", a.curve.display().to_string());
    r.input("q", lz.q);
    r.input("terms", m);
    r.input("genus", lz.genus);
    r.input("seed", seed);
    for (i, y) in lz.counts.iter().enumerate() {
        r.push(Row::info(format!("Y_{}", i + 1), *y as f64));
    }
    for (i, c) in lz.numerator.iter().enumerate() {
        r.push(Row::info(format!("P coefficient T^{i}"), c.to_string().parse::<f64>().unwrap_or(f64::NAN)));
    }
    let weil = weil_rh_check(&lz, tol.unwrap_or(1e-12));
    for (i, m) in weil.moduli.iter().enumerate() {
        r.push(Row::check(
            format!("|alpha_{}|", i + 1),
            *m,
            Some(weil.sqrt_q.into()),
            (m - weil.sqrt_q).abs() / weil.sqrt_q,
            tol.unwrap_or(1e-12),
        ));
    }
    r.push(Row::flag("functional equation", lz.functional_equation_holds()));
    for (i, ok) in lz.weil_bound_holds().into_iter().enumerate() {
        r.push(Row::flag(format!("Weil bound n={}", i + 1), ok));
    }
    for s in parse_list(&a.points)? {
        let d = curve_zeta_det_form(&lz, s)?;
        r.push(Row::check(
            format!("det form zeta_Y({})", label(s)),
            d.value,
            Some(d.cross_check.into()),
            d.discrepancy,
            tol.unwrap_or(1e-10),
        ));
    }
    Ok(r)
}

fn verify_cmd(a: &VerifyArgs, seed: u64) -> Result<Report> {
    let mut cfg = SuiteConfig {
        seed,
        ..SuiteConfig::default()
    };
    if let Some(z) = &a.zeros {
        cfg.zeros_path = z.clone();
    }
    let which: Vec<u8> = match &a.criteria {
        None => CRITERIA.iter().map(|c| c.0).collect(),
        Some(list) => list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|k| (1..=10).contains(k))
                    .ok_or_else(|| Error::Invalid(format!("criteria are 1..10, got {t:?}")))
            })
            .collect::<Result<_>>()?,
    };
    Ok(suite::run_all(&cfg, &which))
}
