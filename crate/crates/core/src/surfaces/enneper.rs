use serde::{Deserialize, Serialize};

use super::SurfaceError;
use crate::exactmath::find_root_bisect_full;

/// Squared radial weights `sigma_n = |lambda_n|^2` of the quantized Enneper
/// surface, starting from the vacuum `sigma_0 = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaSequence {
    pub hbar: f64,
    pub sigma: Vec<f64>,
}

impl SigmaSequence {
    /// Weights `lambda_n = sqrt(sigma_n)` (real nonnegative gauge).
    pub fn lambda(&self) -> Vec<f64> {
        self.sigma.iter().map(|s| s.sqrt()).collect()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.sigma.windows(2).all(|w| w[1] > w[0])
    }
}

/// Unique root `s > sigma` of `(s - sigma)(2 + sigma + s)^2 = 8 hbar`.
///
/// The left side vanishes at `s = sigma` and is increasing beyond it, and it
/// exceeds `8 hbar` once `s - sigma >= 8 hbar / (2 + 2 sigma)^2`.
pub fn sigma_step(hbar: f64, sigma: f64) -> f64 {
    let target = 8.0 * hbar;
    let f = |s: f64| {
        let t = 2.0 + sigma + s;
        (s - sigma) * t * t - target
    };
    let hi = sigma + target / ((2.0 + 2.0 * sigma) * (2.0 + 2.0 * sigma));
    find_root_bisect_full(f, sigma, hi, f64::MIN_POSITIVE)
        .expect("the cubic changes sign on the bracket")
        .midpoint()
}

/// Solves the Enneper recursion for `sigma_0..=sigma_{n_max}`.
pub fn enneper_sigma(hbar: f64, n_max: usize) -> Result<SigmaSequence, SurfaceError> {
    if !(hbar > 0.0) {
        return Err(SurfaceError::DomainError("hbar must be positive".into()));
    }
    let mut sigma = Vec::with_capacity(n_max + 1);
    sigma.push(0.0);
    for n in 0..n_max {
        let next = sigma_step(hbar, sigma[n]);
        sigma.push(next);
    }
    Ok(SigmaSequence { hbar, sigma })
}

/// Leading-order closed form `[(6 hbar n + 3 hbar + 1 - 3c)^{1/3} - 1] * 2n/(2n+1)`.
pub fn enneper_sigma_closed(hbar: f64, c: f64, n: u64) -> Result<f64, SurfaceError> {
    let arg = 6.0 * hbar * n as f64 + 3.0 * hbar + 1.0 - 3.0 * c;
    if !(arg > 0.0) {
        return Err(SurfaceError::DomainError(format!(
            "cube-root argument {arg} must be positive"
        )));
    }
    let bracket = arg.cbrt() - 1.0;
    if n > 0 && bracket < 0.0 {
        return Err(SurfaceError::DomainError(format!(
            "cube-root argument {arg} < 1 gives a negative weight"
        )));
    }
    let n = n as f64;
    Ok(bracket * 2.0 * n / (2.0 * n + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_step_matches_cubic() {
        let s = enneper_sigma(0.1, 3).unwrap();
        assert_eq!(s.sigma[0], 0.0);
        assert!((s.sigma[1] - 0.169_906).abs() < 1e-6, "{}", s.sigma[1]);
        let x = s.sigma[1];
        assert!((x * (2.0 + x).powi(2) - 0.8).abs() < 1e-14);
        assert!(s.is_strictly_increasing());
    }

    #[test]
    fn every_step_solves_recursion() {
        let s = enneper_sigma(0.5, 200).unwrap();
        for w in s.sigma.windows(2) {
            let lhs = (w[1] - w[0]) * (2.0 + w[0] + w[1]).powi(2);
            assert!((lhs - 4.0).abs() < 1e-12 * (1.0 + w[1]).powi(2));
        }
    }

    #[test]
    fn first_weight_expansion() {
        // sigma_1 = 2h - 4h^2 + 14h^3 + O(h^4)
        for &h in &[1e-3, 5e-4] {
            let s1 = sigma_step(h, 0.0);
            let err = s1 - (2.0 * h - 4.0 * h * h + 14.0 * h * h * h);
            assert!(err.abs() < 100.0 * h.powi(4), "{err}");
        }
    }

    #[test]
    fn closed_form() {
        assert_eq!(enneper_sigma_closed(0.3, 0.1, 0).unwrap(), 0.0);
        let v = enneper_sigma_closed(0.1, 0.0, 1).unwrap();
        assert!((v - (1.9f64.cbrt() - 1.0) * 2.0 / 3.0).abs() < 1e-15);
        assert!((v - 0.159_04).abs() < 1e-5);
        let h = 1e-6;
        let v = enneper_sigma_closed(h, 0.0, 3).unwrap();
        assert!((v / (2.0 * h * 3.5 * 6.0 / 7.0) - 1.0).abs() < 1e-4);
        assert!(enneper_sigma_closed(0.1, 1.0, 1).is_err());
        assert!(enneper_sigma_closed(0.1, 0.5, 1).is_err());
    }

    #[test]
    fn rejects_nonpositive_hbar() {
        assert!(enneper_sigma(0.0, 3).is_err());
    }
}
