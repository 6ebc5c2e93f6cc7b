#ifndef ZETAQUANT_H
#define ZETAQUANT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  ZQ_STATUS_OK = 0,
  ZQ_STATUS_NULL_POINTER = 1,
  ZQ_STATUS_INVALID = 2,
  ZQ_STATUS_DOMAIN = 3,
  ZQ_STATUS_RANGE = 4,
  ZQ_STATUS_POLE = 5,
  ZQ_STATUS_CERTIFICATION = 6,
  ZQ_STATUS_CONSISTENCY = 7,
  ZQ_STATUS_IO = 8,
  ZQ_STATUS_PARSE = 9,
  ZQ_STATUS_BOUND = 10,
  ZQ_STATUS_RECOGNITION = 11,
  ZQ_STATUS_QUADRATURE = 12,
  ZQ_STATUS_BUFFER_TOO_SMALL = 13,
  ZQ_STATUS_PANIC = 14,
} ZqStatus;

typedef enum {
  ZQ_TAIL_FINITE = 0,
  /**
   * `|z_n| ~ n^{-kappa}`, `kappa` in the parameter.
   */
  ZQ_TAIL_POWER_LAW = 1,
  /**
   * Membership from `p_star` on; the parameter must be a positive integer.
   */
  ZQ_TAIL_DECLARED = 2,
} ZqTail;

typedef enum {
  ZQ_PAIRING_AS_STORED = 0,
  ZQ_PAIRING_CONJUGATE = 1,
  ZQ_PAIRING_FUNCTIONAL = 2,
} ZqPairing;

/**
 * Recognized zeta data of a curve over a finite field.
 */
typedef struct ZqCurveZeta ZqCurveZeta;

/**
 * A diagonal operator built from zeros.
 */
typedef struct ZqOperator ZqOperator;

/**
 * A zero-height dataset.
 */
typedef struct ZqZeroData ZqZeroData;

typedef struct {
  double re;
  double im;
} ZqComplex;

/**
 * Trace-ideal classification. `p_star` is 0 when no exponent up to the
 * requested bound works.
 */
typedef struct {
  uint32_t p_star;
  bool is_compact;
  bool is_bounded;
  bool is_self_adjoint;
} ZqClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failing call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *zq_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *zq_version(void);

/**
 * Builds the operator with diagonal `1/zeros[i]`; `tail` is a [`ZqTail`].
 *
 * # Safety
 * `zeros` must point to `len` values (or be NULL with `len == 0`); `out`
 * must be writable.
 */
ZqStatus zq_operator_from_zeros(const ZqComplex *zeros,
                                size_t len,
                                uint32_t tail,
                                double tail_param,
                                ZqOperator **out);

/**
 * # Safety
 * `op` must come from [`zq_operator_from_zeros`] and not be used afterwards.
 */
void zq_operator_free(ZqOperator *op);

/**
 * Number of stored diagonal entries; 0 for NULL.
 *
 * # Safety
 * `op` must be NULL or a live handle.
 */
size_t zq_operator_len(const ZqOperator *op);

/**
 * `det_p(I - z D)` over the first `truncation` entries; `pairing` is a
 * [`ZqPairing`].
 *
 * # Safety
 * `op` must be a live handle; `out` writable; `tail_estimate` NULL or writable.
 */
ZqStatus zq_det_p(const ZqOperator *op,
                  uint32_t order_p,
                  ZqComplex z,
                  size_t truncation,
                  uint32_t pairing,
                  ZqComplex *out,
                  double *tail_estimate);

/**
 * # Safety
 * `op` must be a live handle and `out` writable.
 */
ZqStatus zq_operator_classify(const ZqOperator *op, uint32_t p_max, double tol, ZqClass *out);

/**
 * `Gamma(z)` from its determinant form with `terms` diagonal entries.
 *
 * # Safety
 * `out` must be writable.
 */
ZqStatus zq_gamma_reconstruct(ZqComplex z, size_t terms, ZqComplex *out);

/**
 * Independent oracles: 0 = Gamma, 1 = zeta, 2 = xi.
 *
 * # Safety
 * `out` must be writable.
 */
ZqStatus zq_oracle(uint32_t which, ZqComplex s, ZqComplex *out);

/**
 * Truncated Euler product over primes up to `prime_bound`.
 *
 * # Safety
 * `out` must be writable.
 */
ZqStatus zq_euler_product(ZqComplex s, size_t prime_bound, ZqComplex *out);

/**
 * Loads a zero-height file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
ZqStatus zq_zero_data_load(const char *path, ZqZeroData **out);

/**
 * # Safety
 * `data` must come from [`zq_zero_data_load`] and not be used afterwards.
 */
void zq_zero_data_free(ZqZeroData *data);

/**
 * # Safety
 * `data` must be NULL or a live handle.
 */
size_t zq_zero_data_count(const ZqZeroData *data);

/**
 * `xi(s)` from the first `zeros` heights.
 *
 * # Safety
 * `data` must be a live handle; `out` writable.
 */
ZqStatus zq_xi_reconstruct(const ZqZeroData *data, ZqComplex s, size_t zeros, ZqComplex *out);

/**
 * `zeta(s)` from the three-determinant formula.
 *
 * # Safety
 * `data` must be a live handle; `out` writable.
 */
ZqStatus zq_zeta_reconstruct(const ZqZeroData *data,
                             ZqComplex s,
                             size_t zeros,
                             size_t gamma_terms,
                             ZqComplex *out);

/**
 * Counts `Y_1..Y_counts` on a curve file and recognizes its zeta function.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
ZqStatus zq_curve_zeta_load(const char *path, uint32_t counts, ZqCurveZeta **out);

/**
 * # Safety
 * `lz` must come from [`zq_curve_zeta_load`] and not be used afterwards.
 */
void zq_curve_zeta_free(ZqCurveZeta *lz);

/**
 * Copies the coefficients of `P(T)` into `coeffs`. `len` receives the
 * count; with `cap` too small nothing is copied and `BufferTooSmall` is
 * returned.
 *
 * # Safety
 * `lz` must be a live handle, `coeffs` writable for `cap` values (or NULL
 * with `cap == 0`), `len` writable.
 */
ZqStatus zq_curve_zeta_numerator(const ZqCurveZeta *lz, int64_t *coeffs, size_t cap, size_t *len);

/**
 * Writes whether every inverse root has modulus `sqrt q` within `tol * sqrt q`.
 *
 * # Safety
 * `lz` must be a live handle and `pass` writable.
 */
ZqStatus zq_curve_zeta_weil_check(const ZqCurveZeta *lz, double tol, bool *pass);

/**
 * `zeta_Y(s)` through the determinant form.
 *
 * # Safety
 * `lz` must be a live handle and `out` writable.
 */
ZqStatus zq_curve_zeta_det_form(const ZqCurveZeta *lz, ZqComplex s, ZqComplex *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAQUANT_H */
