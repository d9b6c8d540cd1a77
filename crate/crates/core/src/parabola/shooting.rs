use super::orbit::v_iterate;
use super::ParabolaError;
use crate::scalar::{BigReal, Scalar};

/// Working precision used by the extended shooting solver when none is given.
pub const DEFAULT_EXTENDED_BITS: usize = 300;

/// Side of the positive orbit's initial value on which a trial value lies,
/// read off from the parity of the first nonpositive step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureSide {
    /// First failure at an even step.
    Below,
    /// First failure at an odd step.
    Above,
    /// No failure within the iteration budget.
    Survived,
}

impl FailureSide {
    pub fn of<T: Scalar>(eps: &T, x: &T, n_max: usize) -> Self {
        if !x.is_positive() {
            return FailureSide::Below;
        }
        let orbit = v_iterate(eps.clone(), x.clone(), n_max).expect("eps > 0 and x > 0");
        match orbit.first_failure {
            Some(k) if k % 2 == 0 => FailureSide::Below,
            Some(_) => FailureSide::Above,
            None => FailureSide::Survived,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShootingResult<T = f64> {
    pub eps: T,
    pub vhat: T,
    pub lo: T,
    pub hi: T,
    /// Leading positive steps of the orbit started at `vhat`.
    pub survived_steps: usize,
    pub tolerance: T,
    pub iterations: usize,
    /// True when bisection stopped because the working precision could no
    /// longer split the bracket or a trial orbit outlived `n_max`, rather than
    /// because the bracket reached `tolerance`.
    pub resolution_limited: bool,
}

impl<T: Scalar> ShootingResult<T> {
    pub fn width(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }
}

/// Bisection on `x in (0, eps)` using the failure-parity oracle.
///
/// Stops when the bracket is no wider than `tol`, when its midpoint cannot be
/// represented strictly inside it, or when a trial orbit survives all
/// `n_max` steps (its lifetime then says nothing about the side).
pub fn vhat_bisect_in<T: Scalar>(
    eps: T,
    tol: T,
    n_max: usize,
) -> Result<ShootingResult<T>, ParabolaError> {
    if !eps.is_positive() {
        return Err(ParabolaError::NonPositiveEps);
    }
    if tol < T::zero() {
        return Err(ParabolaError::InvalidArgument("tol must be nonnegative".into()));
    }
    let mut lo = T::zero();
    let mut hi = eps.clone();
    let mut iterations = 0;
    let mut resolution_limited = false;
    let mut survivor = None;
    while hi.clone() - lo.clone() > tol {
        let mid = T::midpoint(&lo, &hi);
        if mid <= lo || mid >= hi {
            resolution_limited = true;
            break;
        }
        iterations += 1;
        match FailureSide::of(&eps, &mid, n_max) {
            FailureSide::Below => lo = mid,
            FailureSide::Above => hi = mid,
            FailureSide::Survived => {
                resolution_limited = true;
                survivor = Some(mid);
                break;
            }
        }
    }
    if FailureSide::of(&eps, &lo, n_max) == FailureSide::Above
        || FailureSide::of(&eps, &hi, n_max) == FailureSide::Below
    {
        return Err(ParabolaError::BracketLost {
            lo: lo.to_f64(),
            hi: hi.to_f64(),
        });
    }
    let vhat = survivor.unwrap_or_else(|| T::midpoint(&lo, &hi));
    let survived_steps = v_iterate(eps.clone(), vhat.clone(), n_max)?.survived_steps();
    Ok(ShootingResult {
        eps,
        vhat,
        lo,
        hi,
        survived_steps,
        tolerance: tol,
        iterations,
        resolution_limited,
    })
}

/// Double-precision shooting for the unique positive orbit.
pub fn vhat_bisect(eps: f64, tol: f64, n_max: usize) -> Result<ShootingResult, ParabolaError> {
    if !(tol > 0.0) {
        return Err(ParabolaError::InvalidArgument("tol must be positive".into()));
    }
    vhat_bisect_in(eps, tol, n_max)
}

/// Shooting in `bits`-bit binary floating point, refined until the bracket
/// can no longer be split (or a trial orbit outlives `n_max`).
pub fn vhat_bisect_extended(
    eps: f64,
    bits: usize,
    n_max: usize,
) -> Result<ShootingResult<BigReal>, ParabolaError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(ParabolaError::NonPositiveEps);
    }
    if bits < 53 {
        return Err(ParabolaError::InvalidArgument(format!(
            "extended precision needs at least 53 bits, got {bits}"
        )));
    }
    vhat_bisect_in(BigReal::from_f64(eps, bits), BigReal::zero(), n_max)
}

/// Endpoints `c_0 = 0, c_1 = eps, c_2, ...` of the nested intervals
/// `I_n` with boundary points `c_{n-1}, c_n` on which `v_1, ..., v_n > 0`.
///
/// `c_n` is the zero of `v_n` between `c_{n-2}` (where `v_n -> -1`) and
/// `c_{n-1}` (where `v_n -> +inf`); it is located by bisection down to
/// adjacent doubles.
pub fn interval_endpoints(eps: f64, n_max: usize) -> Result<Vec<f64>, ParabolaError> {
    if !(eps > 0.0) {
        return Err(ParabolaError::NonPositiveEps);
    }
    let mut c = vec![0.0, eps];
    for n in 2..=n_max {
        let exhausted = |c: &Vec<f64>| ParabolaError::PrecisionExhausted {
            reached: n - 1,
            endpoints: c.clone(),
        };
        // `fail` sits on the c_{n-2} side, `live` on the c_{n-1} side.
        let (mut fail, mut live) = (c[n - 2], c[n - 1]);
        loop {
            let mid = 0.5 * (fail + live);
            if mid == fail || mid == live {
                break;
            }
            let orbit = v_iterate(eps, mid, n).expect("eps > 0, mid > 0");
            match orbit.first_failure {
                Some(k) if k == n => fail = mid,
                None => live = mid,
                Some(_) => return Err(exhausted(&c)),
            }
        }
        let root = 0.5 * (fail + live);
        if root == c[n - 1] || root == c[n - 2] {
            return Err(exhausted(&c));
        }
        c.push(root);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_eps_value() {
        let s = vhat_bisect(1.0, 1e-15, 200).unwrap();
        assert!((s.vhat - 0.562_809_321_554_053).abs() < 1e-13, "{}", s.vhat);
        assert!(s.vhat >= 0.5);
        assert!(s.survived_steps >= 40, "{}", s.survived_steps);
        assert!(s.lo <= s.vhat && s.vhat <= s.hi);
    }

    #[test]
    fn small_eps_values() {
        let s = vhat_bisect(0.01, 1e-16, 200).unwrap();
        assert!((s.vhat - 0.009_811_000_994_868_86).abs() < 1e-14, "{}", s.vhat);
        let s = vhat_bisect(0.1, 1e-16, 200).unwrap();
        assert!((s.vhat - 0.086_652_156_278_498_93).abs() < 1e-14, "{}", s.vhat);
    }

    #[test]
    fn extended_precision_outlives_double() {
        let s = vhat_bisect_extended(1.0, 200, 1000).unwrap();
        assert!(s.survived_steps >= 300, "{}", s.survived_steps);
        assert!((s.vhat.to_f64() - 0.562_809_321_554_053).abs() < 1e-15);
        assert!(s.vhat.to_decimal(20).starts_with("0.5628093215540530561"));
    }

    #[test]
    fn parity_flips_across_vhat() {
        let vhat = 0.562_809_321_554_053;
        let below: Vec<_> = (1..50).map(|k| vhat - k as f64 * 1e-3).filter(|x| *x > 0.0).collect();
        let above: Vec<_> = (1..50).map(|k| vhat + k as f64 * 1e-3).filter(|x| *x < 1.0).collect();
        for x in below {
            assert_eq!(FailureSide::of(&1.0, &x, 200), FailureSide::Below, "{x}");
        }
        for x in above {
            assert_eq!(FailureSide::of(&1.0, &x, 200), FailureSide::Above, "{x}");
        }
    }

    #[test]
    fn endpoints_nest() {
        let c = match interval_endpoints(0.1, 40) {
            Ok(c) => c,
            Err(ParabolaError::PrecisionExhausted { endpoints, .. }) => endpoints,
            Err(e) => panic!("{e}"),
        };
        assert!(c.len() > 10);
        assert_eq!(c[1], 0.1);
        assert!((c[2] - 0.084_429_0).abs() < 1e-6);
        let vhat = vhat_bisect(0.1, 1e-16, 200).unwrap().vhat;
        assert!(c[2] < c[4] && c[4] < vhat && vhat < c[3] && c[3] < c[1]);
        for k in 1..(c.len() - 1) / 2 {
            assert!(c[2 * k - 2] < c[2 * k] && c[2 * k] < c[2 * k + 1] && c[2 * k + 1] < c[2 * k - 1]);
        }
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(vhat_bisect(1.0, 0.0, 10).is_err());
        assert!(vhat_bisect(-1.0, 1e-9, 10).is_err());
    }
}
