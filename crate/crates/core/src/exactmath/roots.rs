use super::MathError;

/// Final bracket of a bisection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

impl Bracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Midpoint bisection on a sign-changing bracket.
///
/// Stops once the bracket is no wider than `tol` or when the midpoint can no
/// longer be separated from an endpoint in double precision, so a tiny `tol`
/// drives the bracket to adjacent floats. An exact zero at a probe point
/// collapses the bracket onto it.
pub fn find_root_bisect_full<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<Bracket, MathError>
where
    F: FnMut(f64) -> f64,
{
    if !(tol > 0.0) {
        return Err(MathError::InvalidTolerance(tol));
    }
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(Bracket { lo, hi: lo, iterations: 0 });
    }
    if fhi == 0.0 {
        return Ok(Bracket { lo: hi, hi, iterations: 0 });
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(MathError::NoSignChange { lo, hi });
    }
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(Bracket { lo: mid, hi: mid, iterations });
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(Bracket { lo, hi, iterations })
}

/// Root of `f` in `[lo, hi]` to within `tol`; the midpoint of the final bracket.
pub fn find_root_bisect<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64, MathError>
where
    F: FnMut(f64) -> f64,
{
    find_root_bisect_full(f, lo, hi, tol).map(|b| b.midpoint())
}
