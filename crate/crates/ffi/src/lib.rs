//! C ABI over `qms-core`.
//!
//! Every entry point returns a [`QmsStatus`]; results travel through out
//! pointers. Long-lived results are opaque handles that the caller releases
//! with the matching `*_free` function. The message for the most recent
//! failure on the calling thread is available from [`qms_last_error`].
//! Panics never cross the boundary; they are reported as `QMS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qms_core::exactmath::{rational_to_f64, MathError, Rational};
use qms_core::parabola::{conserved_residual, tau_table, v_iterate, vhat_bisect, ParabolaError, TauTable};
use qms_core::surfaces::{
    catenoid_build, enneper_sigma, hyperbola_r, CatenoidSolution, HyperbolaParams, SurfaceError,
};
use qms_core::torusdegree::{clock_shift, fuzzy_sphere, sphere_degree, torus_degree, unitary_schild, TorusError};

/// Outcome of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Arguments fail validation or leave the domain of the operation.
    InvalidArgument = 2,
    /// An internal identity or invariant failed.
    ContractViolation = 3,
    /// The caller's buffer is too short; the required length was written.
    BufferTooSmall = 4,
    /// The index lies outside the stored range.
    OutOfRange = 5,
    /// A panic was caught at the boundary.
    Panic = 6,
}

/// Result of the parabola shooting method.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QmsShooting {
    pub vhat: f64,
    pub lo: f64,
    pub hi: f64,
    pub survived_steps: usize,
    pub iterations: usize,
}

/// Winding estimate of a unitary pair or of three hermitian matrices.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct QmsDegree {
    pub trace_re: f64,
    pub trace_im: f64,
    pub k: i64,
    pub defect: f64,
    pub dim: usize,
}

/// Opaque handle to a double-precision catenoid sequence.
pub struct QmsCatenoid(CatenoidSolution<f64>);

/// Opaque handle to an exact table of tau polynomials.
pub struct QmsTauTable(TauTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: QmsStatus, msg: impl Into<String>) -> QmsStatus {
    set_error(msg);
    status
}

trait Classify {
    fn status(&self) -> QmsStatus;
}

impl Classify for MathError {
    fn status(&self) -> QmsStatus {
        match self {
            MathError::NotDivisible { .. } => QmsStatus::ContractViolation,
            _ => QmsStatus::InvalidArgument,
        }
    }
}

impl Classify for SurfaceError {
    fn status(&self) -> QmsStatus {
        match self {
            SurfaceError::PropertyViolated(_) => QmsStatus::ContractViolation,
            _ => QmsStatus::InvalidArgument,
        }
    }
}

impl Classify for ParabolaError {
    fn status(&self) -> QmsStatus {
        match self {
            ParabolaError::Math(m) => m.status(),
            ParabolaError::Factorization { .. }
            | ParabolaError::BracketLost { .. }
            | ParabolaError::PrecisionExhausted { .. } => QmsStatus::ContractViolation,
            ParabolaError::OutOfRange { .. } => QmsStatus::OutOfRange,
            _ => QmsStatus::InvalidArgument,
        }
    }
}

impl Classify for TorusError {
    fn status(&self) -> QmsStatus {
        QmsStatus::InvalidArgument
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard<E, F>(f: F) -> QmsStatus
where
    E: Classify + std::fmt::Display,
    F: FnOnce() -> Result<(), E>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QmsStatus::Ok,
        Ok(Err(e)) => fail(e.status(), e.to_string()),
        Err(_) => fail(QmsStatus::Panic, "panic inside qms"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(QmsStatus::NullPointer, concat!("`", stringify!($p), "` is null"));
        })+
    };
}

/// Copies `src` into a caller buffer, always reporting the full length.
///
/// # Safety
/// `buf` must be valid for `cap` writes of `f64` unless `cap` is 0.
unsafe fn write_slice(src: &[f64], buf: *mut f64, cap: usize, out_len: *mut usize) -> QmsStatus {
    *out_len = src.len();
    if src.len() > cap {
        return fail(
            QmsStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", src.len()),
        );
    }
    if !src.is_empty() {
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    QmsStatus::Ok
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qms_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `cap`). Returns the full message length without the NUL;
/// 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be valid for `cap` bytes, or null with `cap == 0`.
#[no_mangle]
pub unsafe extern "C" fn qms_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && cap > 0 {
                let n = bytes.len().min(cap - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds the discrete catenoid on `n_min..=n_max` from `(r_0, r_1, z_0)`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qms_catenoid_build(
    c: f64,
    r0: f64,
    r1: f64,
    z0: f64,
    n_min: i64,
    n_max: i64,
    out: *mut *mut QmsCatenoid,
) -> QmsStatus {
    non_null!(out);
    guard(|| {
        let sol = catenoid_build(c, r0, r1, z0, n_min, n_max)?;
        *out = Box::into_raw(Box::new(QmsCatenoid(sol)));
        Ok::<_, SurfaceError>(())
    })
}

/// Reads `r_n` and `z_n` from a catenoid handle.
///
/// # Safety
/// `h` must come from [`qms_catenoid_build`]; `r` and `z` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_catenoid_at(h: *const QmsCatenoid, n: i64, r: *mut f64, z: *mut f64) -> QmsStatus {
    non_null!(h, r, z);
    let sol = &(*h).0;
    match (sol.r(n), sol.z(n)) {
        (Some(rv), Some(zv)) => {
            *r = *rv;
            *z = *zv;
            QmsStatus::Ok
        }
        _ => fail(QmsStatus::OutOfRange, format!("n = {n} is outside the stored range")),
    }
}

/// Stored index range of a catenoid handle.
///
/// # Safety
/// `h` must come from [`qms_catenoid_build`]; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_catenoid_range(h: *const QmsCatenoid, n_min: *mut i64, n_max: *mut i64) -> QmsStatus {
    non_null!(h, n_min, n_max);
    let range = (*h).0.indices();
    *n_min = *range.start();
    *n_max = *range.end();
    QmsStatus::Ok
}

/// Releases a catenoid handle; null is ignored.
///
/// # Safety
/// `h` must come from [`qms_catenoid_build`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qms_catenoid_free(h: *mut QmsCatenoid) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Writes `sigma_0..=sigma_{n_max}` of the Enneper sequence into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` writes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_enneper_sigma(
    hbar: f64,
    n_max: usize,
    buf: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> QmsStatus {
    non_null!(out_len);
    if cap > 0 {
        non_null!(buf);
    }
    let mut status = QmsStatus::Ok;
    let outer = guard(|| {
        let seq = enneper_sigma(hbar, n_max)?;
        status = write_slice(&seq.sigma, buf, cap, out_len);
        Ok::<_, SurfaceError>(())
    });
    if outer == QmsStatus::Ok { status } else { outer }
}

/// Evaluates `r_n` on the complex hyperbola (principal branch).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_hyperbola_r(eps: f64, delta: f64, c_abs: f64, n: i64, out: *mut f64) -> QmsStatus {
    non_null!(out);
    guard(|| {
        let p = HyperbolaParams::new(eps, delta, c_abs)?;
        *out = hyperbola_r(&p, n)?;
        Ok::<_, SurfaceError>(())
    })
}

/// Iterates the parabola recursion from `v_0 = x` in double precision and
/// writes the orbit up to and including the first nonpositive value.
///
/// # Safety
/// `buf` must be valid for `cap` writes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_parabola_iterate(
    eps: f64,
    x: f64,
    n_max: usize,
    buf: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> QmsStatus {
    non_null!(out_len);
    if cap > 0 {
        non_null!(buf);
    }
    let mut status = QmsStatus::Ok;
    let outer = guard(|| {
        let orbit = v_iterate(eps, x, n_max)?;
        status = write_slice(&orbit.v, buf, cap, out_len);
        Ok::<_, ParabolaError>(())
    });
    if outer == QmsStatus::Ok { status } else { outer }
}

/// Locates the initial value whose parabola orbit stays positive.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_parabola_shoot(eps: f64, tol: f64, n_max: usize, out: *mut QmsShooting) -> QmsStatus {
    non_null!(out);
    guard(|| {
        let s = vhat_bisect(eps, tol, n_max)?;
        *out = QmsShooting {
            vhat: s.vhat,
            lo: s.lo,
            hi: s.hi,
            survived_steps: s.survived_steps,
            iterations: s.iterations,
        };
        Ok::<_, ParabolaError>(())
    })
}

/// Builds the exact tau polynomials for `eps = eps_num / eps_den`.
///
/// # Safety
/// `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qms_tau_table_new(
    eps_num: i64,
    eps_den: i64,
    n_max: usize,
    out: *mut *mut QmsTauTable,
) -> QmsStatus {
    non_null!(out);
    if eps_den == 0 {
        return fail(QmsStatus::InvalidArgument, "eps denominator is zero");
    }
    guard(|| {
        let eps = Rational::new(eps_num.into(), eps_den.into());
        let table = tau_table(&eps, n_max)?;
        *out = Box::into_raw(Box::new(QmsTauTable(table)));
        Ok::<_, ParabolaError>(())
    })
}

/// Coefficients of `tau_n`, from `x^0` upwards, rounded to double.
///
/// # Safety
/// `h` must come from [`qms_tau_table_new`]; `buf` must be valid for `cap`
/// writes; `out_len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_tau_coefficients(
    h: *const QmsTauTable,
    n: i64,
    buf: *mut f64,
    cap: usize,
    out_len: *mut usize,
) -> QmsStatus {
    non_null!(h, out_len);
    if cap > 0 {
        non_null!(buf);
    }
    match (*h).0.tau(n) {
        Some(p) => {
            let c: Vec<f64> = p.coeffs().iter().map(rational_to_f64).collect();
            write_slice(&c, buf, cap, out_len)
        }
        None => fail(QmsStatus::OutOfRange, format!("tau_{n} is not stored")),
    }
}

/// Evaluates `tau_n(x)` in double precision.
///
/// # Safety
/// `h` must come from [`qms_tau_table_new`]; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_tau_eval(h: *const QmsTauTable, n: i64, x: f64, out: *mut f64) -> QmsStatus {
    non_null!(h, out);
    match (*h).0.tau(n) {
        Some(p) => {
            *out = p.eval_f64(x);
            QmsStatus::Ok
        }
        None => fail(QmsStatus::OutOfRange, format!("tau_{n} is not stored")),
    }
}

/// Checks both conserved tau identities exactly at index `n`; writes 1 when
/// both vanish identically, 0 otherwise.
///
/// # Safety
/// `h` must come from [`qms_tau_table_new`]; `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_tau_conserved(h: *const QmsTauTable, n: i64, holds: *mut i32) -> QmsStatus {
    non_null!(h, holds);
    let table = &(*h).0;
    guard(|| {
        let (a, b) = conserved_residual(table, n)?;
        *holds = i32::from(a.is_zero() && b.is_zero());
        Ok::<_, ParabolaError>(())
    })
}

/// Releases a tau table; null is ignored.
///
/// # Safety
/// `h` must come from [`qms_tau_table_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qms_tau_table_free(h: *mut QmsTauTable) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Degree of the clock-shift pair `(shift, clock^power)` of size `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_torus_degree(n: usize, power: u32, out: *mut QmsDegree) -> QmsStatus {
    non_null!(out);
    guard(|| {
        let cs = clock_shift(n)?;
        let m = cs.matrices();
        let d = torus_degree(&m[0], &m[1].pow(power))?;
        *out = QmsDegree {
            trace_re: d.trace_value.re,
            trace_im: d.trace_value.im,
            k: d.k_estimate,
            defect: d.defect,
            dim: d.dim,
        };
        Ok::<_, TorusError>(())
    })
}

/// Degree of the fuzzy sphere of size `n`; `swap != 0` exchanges X2 and X3.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_sphere_degree(n: usize, swap: i32, out: *mut QmsDegree) -> QmsStatus {
    non_null!(out);
    guard(|| {
        let [x1, x2, x3] = fuzzy_sphere(n)?;
        let d = if swap != 0 { sphere_degree(&x1, &x3, &x2)? } else { sphere_degree(&x1, &x2, &x3)? };
        *out = QmsDegree {
            trace_re: d.trace_value.re,
            trace_im: d.trace_value.im,
            k: d.k_estimate,
            defect: d.defect,
            dim: d.dim,
        };
        Ok::<_, TorusError>(())
    })
}

/// Unitary Schild action of the clock-shift pair of size `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qms_clock_shift_schild(n: usize, out: *mut f64) -> QmsStatus {
    non_null!(out);
    guard(|| {
        *out = unitary_schild(&clock_shift(n)?);
        Ok::<_, TorusError>(())
    })
}
