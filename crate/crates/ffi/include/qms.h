#ifndef QMS_H
#define QMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum QmsStatus {
  QMS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QMS_STATUS_NULL_POINTER = 1,
  /**
   * Arguments fail validation or leave the domain of the operation.
   */
  QMS_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An internal identity or invariant failed.
   */
  QMS_STATUS_CONTRACT_VIOLATION = 3,
  /**
   * The caller's buffer is too short; the required length was written.
   */
  QMS_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * The index lies outside the stored range.
   */
  QMS_STATUS_OUT_OF_RANGE = 5,
  /**
   * A panic was caught at the boundary.
   */
  QMS_STATUS_PANIC = 6,
} QmsStatus;

/**
 * Opaque handle to a double-precision catenoid sequence.
 */
typedef struct QmsCatenoid QmsCatenoid;

/**
 * Opaque handle to an exact table of tau polynomials.
 */
typedef struct QmsTauTable QmsTauTable;

/**
 * Result of the parabola shooting method.
 */
typedef struct QmsShooting {
  double vhat;
  double lo;
  double hi;
  size_t survived_steps;
  size_t iterations;
} QmsShooting;

/**
 * Winding estimate of a unitary pair or of three hermitian matrices.
 */
typedef struct QmsDegree {
  double trace_re;
  double trace_im;
  int64_t k;
  double defect;
  size_t dim;
} QmsDegree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qms_version(void);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `cap`). Returns the full message length without the NUL;
 * 0 when no error has been recorded.
 *
 * # Safety
 * `buf` must be valid for `cap` bytes, or null with `cap == 0`.
 */
size_t qms_last_error(char *buf, size_t cap);

/**
 * Builds the discrete catenoid on `n_min..=n_max` from `(r_0, r_1, z_0)`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum QmsStatus qms_catenoid_build(double c,
                                  double r0,
                                  double r1,
                                  double z0,
                                  int64_t n_min,
                                  int64_t n_max,
                                  struct QmsCatenoid **out);

/**
 * Reads `r_n` and `z_n` from a catenoid handle.
 *
 * # Safety
 * `h` must come from [`qms_catenoid_build`]; `r` and `z` must be writable.
 */
enum QmsStatus qms_catenoid_at(const struct QmsCatenoid *h, int64_t n, double *r, double *z);

/**
 * Stored index range of a catenoid handle.
 *
 * # Safety
 * `h` must come from [`qms_catenoid_build`]; the out pointers must be writable.
 */
enum QmsStatus qms_catenoid_range(const struct QmsCatenoid *h, int64_t *n_min, int64_t *n_max);

/**
 * Releases a catenoid handle; null is ignored.
 *
 * # Safety
 * `h` must come from [`qms_catenoid_build`] and not have been freed.
 */
void qms_catenoid_free(struct QmsCatenoid *h);

/**
 * Writes `sigma_0..=sigma_{n_max}` of the Enneper sequence into `buf`.
 *
 * # Safety
 * `buf` must be valid for `cap` writes; `out_len` must be writable.
 */
enum QmsStatus qms_enneper_sigma(double hbar,
                                 size_t n_max,
                                 double *buf,
                                 size_t cap,
                                 size_t *out_len);

/**
 * Evaluates `r_n` on the complex hyperbola (principal branch).
 *
 * # Safety
 * `out` must be writable.
 */
enum QmsStatus qms_hyperbola_r(double eps, double delta, double c_abs, int64_t n, double *out);

/**
 * Iterates the parabola recursion from `v_0 = x` in double precision and
 * writes the orbit up to and including the first nonpositive value.
 *
 * # Safety
 * `buf` must be valid for `cap` writes; `out_len` must be writable.
 */
enum QmsStatus qms_parabola_iterate(double eps,
                                    double x,
                                    size_t n_max,
                                    double *buf,
                                    size_t cap,
                                    size_t *out_len);

/**
 * Locates the initial value whose parabola orbit stays positive.
 *
 * # Safety
 * `out` must be writable.
 */
enum QmsStatus qms_parabola_shoot(double eps, double tol, size_t n_max, struct QmsShooting *out);

/**
 * Builds the exact tau polynomials for `eps = eps_num / eps_den`.
 *
 * # Safety
 * `out` must be valid for one pointer write.
 */
enum QmsStatus qms_tau_table_new(int64_t eps_num,
                                 int64_t eps_den,
                                 size_t n_max,
                                 struct QmsTauTable **out);

/**
 * Coefficients of `tau_n`, from `x^0` upwards, rounded to double.
 *
 * # Safety
 * `h` must come from [`qms_tau_table_new`]; `buf` must be valid for `cap`
 * writes; `out_len` must be writable.
 */
enum QmsStatus qms_tau_coefficients(const struct QmsTauTable *h,
                                    int64_t n,
                                    double *buf,
                                    size_t cap,
                                    size_t *out_len);

/**
 * Evaluates `tau_n(x)` in double precision.
 *
 * # Safety
 * `h` must come from [`qms_tau_table_new`]; `out` must be writable.
 */
enum QmsStatus qms_tau_eval(const struct QmsTauTable *h, int64_t n, double x, double *out);

/**
 * Checks both conserved tau identities exactly at index `n`; writes 1 when
 * both vanish identically, 0 otherwise.
 *
 * # Safety
 * `h` must come from [`qms_tau_table_new`]; `holds` must be writable.
 */
enum QmsStatus qms_tau_conserved(const struct QmsTauTable *h, int64_t n, int32_t *holds);

/**
 * Releases a tau table; null is ignored.
 *
 * # Safety
 * `h` must come from [`qms_tau_table_new`] and not have been freed.
 */
void qms_tau_table_free(struct QmsTauTable *h);

/**
 * Degree of the clock-shift pair `(shift, clock^power)` of size `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QmsStatus qms_torus_degree(size_t n, uint32_t power, struct QmsDegree *out);

/**
 * Degree of the fuzzy sphere of size `n`; `swap != 0` exchanges X2 and X3.
 *
 * # Safety
 * `out` must be writable.
 */
enum QmsStatus qms_sphere_degree(size_t n, int32_t swap, struct QmsDegree *out);

/**
 * Unitary Schild action of the clock-shift pair of size `n`.
 *
 * # Safety
 * `out` must be writable.
 */
enum QmsStatus qms_clock_shift_schild(size_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QMS_H */
