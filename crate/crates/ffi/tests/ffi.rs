use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use zetaquant_ffi::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn cz(re: f64, im: f64) -> ZqComplex {
    ZqComplex { re, im }
}

#[test]
fn operator_lifecycle_and_determinants() {
    let zeros = [cz(2.0, 0.0), cz(-4.0, 0.0), cz(0.5, 1.0)];
    let mut op = ptr::null_mut();
    unsafe {
        assert_eq!(zq_operator_from_zeros(zeros.as_ptr(), 3, ZqTail::Finite as u32, 0.0, &mut op), ZqStatus::Ok);
        assert_eq!(zq_operator_len(op), 3);
        let mut out = cz(0.0, 0.0);
        let mut tail = f64::NAN;
        assert_eq!(zq_det_p(op, 1, cz(2.0, 0.0), 3, 0, &mut out, &mut tail), ZqStatus::Ok);
        assert_eq!((out.re, out.im), (0.0, 0.0));
        assert_eq!(zq_det_p(op, 0, cz(2.0, 0.0), 3, 0, &mut out, ptr::null_mut()), ZqStatus::Invalid);
        assert_eq!(zq_det_p(op, 1, cz(2.0, 0.0), 3, 7, &mut out, ptr::null_mut()), ZqStatus::Invalid);
        let mut class = ZqClass { p_star: 9, is_compact: false, is_bounded: false, is_self_adjoint: true };
        assert_eq!(zq_operator_classify(op, 3, 0.0, &mut class), ZqStatus::Ok);
        assert_eq!(class.p_star, 1);
        assert!(!class.is_self_adjoint);
        zq_operator_free(op);
        zq_operator_free(ptr::null_mut());
        assert_eq!(zq_operator_len(ptr::null()), 0);

        let zero = [cz(0.0, 0.0)];
        assert_eq!(zq_operator_from_zeros(zero.as_ptr(), 1, 0, 0.0, &mut op), ZqStatus::Invalid);
        assert!(op.is_null());
        assert_eq!(zq_operator_from_zeros(zeros.as_ptr(), 3, 2, 1.5, &mut op), ZqStatus::Invalid);
        assert_eq!(zq_operator_from_zeros(ptr::null(), 2, 0, 0.0, &mut op), ZqStatus::NullPointer);
    }
}

#[test]
fn reconstructions_and_oracles() {
    unsafe {
        let mut g = cz(0.0, 0.0);
        assert_eq!(zq_gamma_reconstruct(cz(0.5, 0.0), 1_000_000, &mut g), ZqStatus::Ok);
        let mut o = cz(0.0, 0.0);
        assert_eq!(zq_oracle(0, cz(0.5, 0.0), &mut o), ZqStatus::Ok);
        assert!((g.re - o.re).abs() / o.re < 1e-5);
        assert_eq!(zq_oracle(5, cz(0.5, 0.0), &mut o), ZqStatus::Invalid);

        let mut e = cz(0.0, 0.0);
        assert_eq!(zq_euler_product(cz(3.0, 0.0), 10_000, &mut e), ZqStatus::Ok);
        assert!((e.re - 1.202_056_903_159_594_3).abs() < 1e-6);
        assert_eq!(zq_euler_product(cz(0.5, 0.0), 100, &mut e), ZqStatus::Domain);

        let path = CString::new(fixture("zeros_100k.txt").to_str().unwrap()).unwrap();
        let mut data = ptr::null_mut();
        assert_eq!(zq_zero_data_load(path.as_ptr(), &mut data), ZqStatus::Ok);
        assert_eq!(zq_zero_data_count(data), 100_000);
        let mut xi = cz(0.0, 0.0);
        assert_eq!(zq_xi_reconstruct(data, cz(0.0, 0.0), 1000, &mut xi), ZqStatus::Ok);
        assert_eq!(xi.re, 0.5);
        let mut z = cz(0.0, 0.0);
        assert_eq!(zq_zeta_reconstruct(data, cz(2.0, 0.0), 1000, 10_000, &mut z), ZqStatus::Ok);
        assert!((z.re - 1.644_934_066_848_226_4).abs() < 0.01);
        assert_eq!(zq_zeta_reconstruct(data, cz(1.0, 0.0), 1000, 10_000, &mut z), ZqStatus::Pole);
        zq_zero_data_free(data);

        let missing = CString::new("/nonexistent/zeros.txt").unwrap();
        assert_eq!(zq_zero_data_load(missing.as_ptr(), &mut data), ZqStatus::Io);
        let msg = CStr::from_ptr(zq_last_error_message()).to_str().unwrap();
        assert!(msg.contains("/nonexistent/zeros.txt"), "{msg}");
    }
}

#[test]
fn curve_zeta_through_handles() {
    unsafe {
        let path = CString::new(fixture("e_f5.curve").to_str().unwrap()).unwrap();
        let mut lz = ptr::null_mut();
        assert_eq!(zq_curve_zeta_load(path.as_ptr(), 4, &mut lz), ZqStatus::Ok);
        let mut len = 0usize;
        assert_eq!(zq_curve_zeta_numerator(lz, ptr::null_mut(), 0, &mut len), ZqStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut coeffs = [0i64; 3];
        assert_eq!(zq_curve_zeta_numerator(lz, coeffs.as_mut_ptr(), 3, &mut len), ZqStatus::Ok);
        assert_eq!(coeffs, [1, -2, 5]);
        let mut pass = false;
        assert_eq!(zq_curve_zeta_weil_check(lz, 1e-12, &mut pass), ZqStatus::Ok);
        assert!(pass);
        let mut v = cz(0.0, 0.0);
        assert_eq!(zq_curve_zeta_det_form(lz, cz(2.0, 0.0), &mut v), ZqStatus::Ok);
        // P(1/25) / ((1 - 1/25)(1 - 1/5)) = 29/24
        assert!((v.re - 29.0 / 24.0).abs() < 1e-12);
        assert_eq!(zq_curve_zeta_det_form(lz, cz(0.0, 0.0), &mut v), ZqStatus::Pole);
        zq_curve_zeta_free(lz);
    }
}

/// Compiles the C smoke test against the generated header and a freshly
/// built static library. `cargo test` only refreshes the rlib, so the archive
/// is built here in its own target directory.
#[test]
fn c_smoke_program() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping C smoke test: no C compiler");
        return;
    }
    let target_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target/ffi-smoke");
    let built = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "zetaquant-ffi", "--lib", "--target-dir"])
        .arg(&target_dir)
        .status()
        .expect("cargo runs");
    assert!(built.success(), "static library build failed");
    let lib = target_dir.join("debug/libzetaquant_ffi.a");
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("zetaquant_smoke_{}", std::process::id()));
    let status = Command::new(&cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&out)
        .status()
        .expect("cc runs");
    assert!(status.success(), "C smoke test failed to compile");
    let run = Command::new(&out).arg(fixture("e_f3.curve")).output().expect("smoke runs");
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("smoke ok"));
}
