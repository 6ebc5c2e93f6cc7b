//! C ABI over the `zetaquant` library.
//!
//! Objects cross the boundary as opaque handles that the caller releases with
//! the matching `*_free` function. Every fallible call returns a
//! [`ZqStatus`]; on failure the message is available from
//! [`zq_last_error_message`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use zetaquant::ffcurves::{curve_zeta_det_form, load_curve, weil_rh_check, LocalZeta};
use zetaquant::opmodel::{classify, DiagonalOperator, PStar, TailModel, ZeroMultiset};
use zetaquant::recon::oracle::{gamma_oracle, xi_oracle, zeta_oracle};
use zetaquant::recon::{
    euler_product_det, gamma_reconstruct, load_zero_dataset, xi_reconstruct, zeta_reconstruct, ZeroDataset, ZetaTerms,
};
use zetaquant::regdet::{det_p, Pairing, RegDetRequest};
use zetaquant::{Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZqStatus {
    Ok = 0,
    NullPointer = 1,
    Invalid = 2,
    Domain = 3,
    Range = 4,
    Pole = 5,
    Certification = 6,
    Consistency = 7,
    Io = 8,
    Parse = 9,
    Bound = 10,
    Recognition = 11,
    Quadrature = 12,
    BufferTooSmall = 13,
    Panic = 14,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZqComplex {
    pub re: f64,
    pub im: f64,
}

impl From<ZqComplex> for Complex64 {
    fn from(z: ZqComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for ZqComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZqTail {
    Finite = 0,
    /// `|z_n| ~ n^{-kappa}`, `kappa` in the parameter.
    PowerLaw = 1,
    /// Membership from `p_star` on; the parameter must be a positive integer.
    Declared = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZqPairing {
    AsStored = 0,
    Conjugate = 1,
    Functional = 2,
}

/// Trace-ideal classification. `p_star` is 0 when no exponent up to the
/// requested bound works.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZqClass {
    pub p_star: u32,
    pub is_compact: bool,
    pub is_bounded: bool,
    pub is_self_adjoint: bool,
}

/// A diagonal operator built from zeros.
pub struct ZqOperator(DiagonalOperator);

/// A zero-height dataset.
pub struct ZqZeroData(ZeroDataset);

/// Recognized zeta data of a curve over a finite field.
pub struct ZqCurveZeta(LocalZeta);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> ZqStatus {
    match e {
        Error::Range(_) => ZqStatus::Range,
        Error::Pole(_) | Error::PoleFactor { .. } => ZqStatus::Pole,
        Error::ZeroFactor { .. } | Error::Domain(_) => ZqStatus::Domain,
        Error::Invalid(_) => ZqStatus::Invalid,
        Error::Consistency { .. } => ZqStatus::Consistency,
        Error::Certification(_) => ZqStatus::Certification,
        Error::Quadrature(_) => ZqStatus::Quadrature,
        Error::Parse { .. } => ZqStatus::Parse,
        Error::Io { .. } => ZqStatus::Io,
        Error::Bound(_) => ZqStatus::Bound,
        Error::Recognition(_) => ZqStatus::Recognition,
    }
}

/// Runs `f`, recording any error or panic.
fn guard<F: FnOnce() -> Result<(), (ZqStatus, String)>>(f: F) -> ZqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ZqStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ZqStatus::Panic
        }
    }
}

fn lib<T>(r: zetaquant::Result<T>) -> Result<T, (ZqStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (ZqStatus, String) {
    (ZqStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (ZqStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn path_arg<'a>(p: *const c_char) -> Result<&'a Path, (ZqStatus, String)> {
    if p.is_null() {
        return Err(null("path"));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (ZqStatus::Invalid, "path is not UTF-8".to_string()))?;
    Ok(Path::new(s))
}

/// Message of the last failing call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn zq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn zq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the operator with diagonal `1/zeros[i]`; `tail` is a [`ZqTail`].
///
/// # Safety
/// `zeros` must point to `len` values (or be NULL with `len == 0`); `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn zq_operator_from_zeros(
    zeros: *const ZqComplex,
    len: usize,
    tail: u32,
    tail_param: f64,
    out: *mut *mut ZqOperator,
) -> ZqStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let values: &[ZqComplex] = if len == 0 {
            &[]
        } else if zeros.is_null() {
            return Err(null("zeros"));
        } else {
            std::slice::from_raw_parts(zeros, len)
        };
        let tail = match tail {
            t if t == ZqTail::Finite as u32 => TailModel::Finite,
            t if t == ZqTail::PowerLaw as u32 => TailModel::PowerLaw { kappa: tail_param },
            t if t == ZqTail::Declared as u32 => {
                if !(tail_param >= 1.0 && tail_param.fract() == 0.0 && tail_param <= u32::MAX as f64) {
                    return Err((ZqStatus::Invalid, format!("declared p_star must be a positive integer, got {tail_param}")));
                }
                TailModel::Declared { p_star: tail_param as u32 }
            }
            t => return Err((ZqStatus::Invalid, format!("unknown tail model {t}"))),
        };
        let set = lib(ZeroMultiset::zeros(values.iter().map(|&z| Complex64::from(z))))?;
        let op = DiagonalOperator::from_zeros(&set).with_tail(tail);
        *out = Box::into_raw(Box::new(ZqOperator(op)));
        Ok(())
    })
}

/// # Safety
/// `op` must come from [`zq_operator_from_zeros`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zq_operator_free(op: *mut ZqOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Number of stored diagonal entries; 0 for NULL.
///
/// # Safety
/// `op` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zq_operator_len(op: *const ZqOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.len())
}

/// `det_p(I - z D)` over the first `truncation` entries; `pairing` is a
/// [`ZqPairing`].
///
/// # Safety
/// `op` must be a live handle; `out` writable; `tail_estimate` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zq_det_p(
    op: *const ZqOperator,
    order_p: u32,
    z: ZqComplex,
    truncation: usize,
    pairing: u32,
    out: *mut ZqComplex,
    tail_estimate: *mut f64,
) -> ZqStatus {
    guard(|| {
        let op = op.as_ref().ok_or_else(|| null("operator"))?;
        let out = out_ref(out, "out")?;
        let pairing = match pairing {
            p if p == ZqPairing::AsStored as u32 => Pairing::AsStored,
            p if p == ZqPairing::Conjugate as u32 => Pairing::ConjugatePaired,
            p if p == ZqPairing::Functional as u32 => Pairing::FunctionalPaired,
            p => return Err((ZqStatus::Invalid, format!("unknown pairing {p}"))),
        };
        let d = lib(det_p(&op.0, &RegDetRequest::new(order_p, z.into(), truncation).pairing(pairing)))?;
        *out = d.value.into();
        if let Some(t) = tail_estimate.as_mut() {
            *t = d.tail_estimate;
        }
        Ok(())
    })
}

/// # Safety
/// `op` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_operator_classify(op: *const ZqOperator, p_max: u32, tol: f64, out: *mut ZqClass) -> ZqStatus {
    guard(|| {
        let op = op.as_ref().ok_or_else(|| null("operator"))?;
        let out = out_ref(out, "out")?;
        let class = lib(classify(&op.0, p_max, tol))?;
        *out = ZqClass {
            p_star: match class.p_star {
                PStar::Exponent(p) => p,
                PStar::NoneUpTo(_) => 0,
            },
            is_compact: class.is_compact,
            is_bounded: class.is_bounded,
            is_self_adjoint: class.is_self_adjoint,
        };
        Ok(())
    })
}

/// `Gamma(z)` from its determinant form with `terms` diagonal entries.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zq_gamma_reconstruct(z: ZqComplex, terms: usize, out: *mut ZqComplex) -> ZqStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = lib(gamma_reconstruct(z.into(), terms))?.value.into();
        Ok(())
    })
}

/// Independent oracles: 0 = Gamma, 1 = zeta, 2 = xi.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zq_oracle(which: u32, s: ZqComplex, out: *mut ZqComplex) -> ZqStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let v = match which {
            0 => gamma_oracle(s.into()),
            1 => zeta_oracle(s.into()),
            2 => xi_oracle(s.into()),
            k => return Err((ZqStatus::Invalid, format!("unknown oracle {k}"))),
        };
        *out = lib(v)?.into();
        Ok(())
    })
}

/// Truncated Euler product over primes up to `prime_bound`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn zq_euler_product(s: ZqComplex, prime_bound: usize, out: *mut ZqComplex) -> ZqStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = lib(euler_product_det(s.into(), prime_bound))?.into();
        Ok(())
    })
}

/// Loads a zero-height file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_zero_data_load(path: *const c_char, out: *mut *mut ZqZeroData) -> ZqStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let data = lib(load_zero_dataset(path_arg(path)?))?;
        *out = Box::into_raw(Box::new(ZqZeroData(data)));
        Ok(())
    })
}

/// # Safety
/// `data` must come from [`zq_zero_data_load`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zq_zero_data_free(data: *mut ZqZeroData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// # Safety
/// `data` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn zq_zero_data_count(data: *const ZqZeroData) -> usize {
    data.as_ref().map_or(0, |d| d.0.count())
}

/// `xi(s)` from the first `zeros` heights.
///
/// # Safety
/// `data` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_xi_reconstruct(
    data: *const ZqZeroData,
    s: ZqComplex,
    zeros: usize,
    out: *mut ZqComplex,
) -> ZqStatus {
    guard(|| {
        let data = data.as_ref().ok_or_else(|| null("data"))?;
        let out = out_ref(out, "out")?;
        *out = lib(xi_reconstruct(s.into(), &data.0, zeros))?.value.into();
        Ok(())
    })
}

/// `zeta(s)` from the three-determinant formula.
///
/// # Safety
/// `data` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_zeta_reconstruct(
    data: *const ZqZeroData,
    s: ZqComplex,
    zeros: usize,
    gamma_terms: usize,
    out: *mut ZqComplex,
) -> ZqStatus {
    guard(|| {
        let data = data.as_ref().ok_or_else(|| null("data"))?;
        let out = out_ref(out, "out")?;
        let terms = ZetaTerms { zeros, gamma_terms };
        *out = lib(zeta_reconstruct(s.into(), &data.0, terms))?.value.into();
        Ok(())
    })
}

/// Counts `Y_1..Y_counts` on a curve file and recognizes its zeta function.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_curve_zeta_load(path: *const c_char, counts: u32, out: *mut *mut ZqCurveZeta) -> ZqStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let curve = lib(load_curve(path_arg(path)?))?;
        let lz = lib(LocalZeta::from_curve(&curve, counts))?;
        *out = Box::into_raw(Box::new(ZqCurveZeta(lz)));
        Ok(())
    })
}

/// # Safety
/// `lz` must come from [`zq_curve_zeta_load`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn zq_curve_zeta_free(lz: *mut ZqCurveZeta) {
    if !lz.is_null() {
        drop(Box::from_raw(lz));
    }
}

/// Copies the coefficients of `P(T)` into `coeffs`. `len` receives the
/// count; with `cap` too small nothing is copied and `BufferTooSmall` is
/// returned.
///
/// # Safety
/// `lz` must be a live handle, `coeffs` writable for `cap` values (or NULL
/// with `cap == 0`), `len` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_curve_zeta_numerator(
    lz: *const ZqCurveZeta,
    coeffs: *mut i64,
    cap: usize,
    len: *mut usize,
) -> ZqStatus {
    guard(|| {
        let lz = lz.as_ref().ok_or_else(|| null("curve zeta"))?;
        let len = out_ref(len, "len")?;
        let values: Vec<i64> = lz
            .0
            .numerator
            .iter()
            .map(|a| {
                a.to_string()
                    .parse::<i64>()
                    .map_err(|_| (ZqStatus::Range, format!("coefficient {a} exceeds 64 bits")))
            })
            .collect::<Result<_, _>>()?;
        *len = values.len();
        if cap < values.len() {
            return Err((ZqStatus::BufferTooSmall, format!("need {} slots, got {cap}", values.len())));
        }
        if coeffs.is_null() {
            return Err(null("coeffs"));
        }
        std::ptr::copy_nonoverlapping(values.as_ptr(), coeffs, values.len());
        Ok(())
    })
}

/// Writes whether every inverse root has modulus `sqrt q` within `tol * sqrt q`.
///
/// # Safety
/// `lz` must be a live handle and `pass` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_curve_zeta_weil_check(lz: *const ZqCurveZeta, tol: f64, pass: *mut bool) -> ZqStatus {
    guard(|| {
        let lz = lz.as_ref().ok_or_else(|| null("curve zeta"))?;
        *out_ref(pass, "pass")? = weil_rh_check(&lz.0, tol).pass;
        Ok(())
    })
}

/// `zeta_Y(s)` through the determinant form.
///
/// # Safety
/// `lz` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zq_curve_zeta_det_form(lz: *const ZqCurveZeta, s: ZqComplex, out: *mut ZqComplex) -> ZqStatus {
    guard(|| {
        let lz = lz.as_ref().ok_or_else(|| null("curve zeta"))?;
        let out = out_ref(out, "out")?;
        *out = lib(curve_zeta_det_form(&lz.0, s.into()))?.value.into();
        Ok(())
    })
}
