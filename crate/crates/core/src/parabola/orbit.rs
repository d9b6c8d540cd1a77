use super::ParabolaError;
use crate::scalar::Scalar;

/// Orbit of `v_n (v_{n+1} + v_{n-1} + 1) = eps (n+1)` from `v_0 = x`,
/// `v_{-1} = 0`. Iteration stops at the first nonpositive value, which is
/// kept as the last entry of `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolaOrbit<T = f64> {
    pub eps: T,
    pub x: T,
    pub v: Vec<T>,
    pub first_failure: Option<usize>,
}

impl<T: Scalar> ParabolaOrbit<T> {
    /// Number of leading positive values.
    pub fn survived_steps(&self) -> usize {
        self.first_failure.unwrap_or(self.v.len())
    }

    /// `v_n (v_{n+1} + v_{n-1} + 1) - eps (n+1)` for every `n` whose
    /// neighbours were computed.
    pub fn recursion_residuals(&self) -> Vec<T> {
        (0..self.v.len().saturating_sub(1))
            .map(|n| {
                let prev = if n == 0 { T::zero() } else { self.v[n - 1].clone() };
                self.v[n].clone() * (self.v[n + 1].clone() + prev + T::one())
                    - self.eps.clone() * T::from_i64(n as i64 + 1)
            })
            .collect()
    }

    /// Five-term diagonal form
    /// `v_n - v_{n-1} + v_n v_{n+1} - v_{n-1} v_{n-2} - eps`, the difference of
    /// consecutive three-term relations.
    pub fn diagonal_residuals(&self) -> Vec<T> {
        let at = |k: isize| {
            if k < 0 {
                T::zero()
            } else {
                self.v[k as usize].clone()
            }
        };
        (0..self.v.len().saturating_sub(1) as isize)
            .map(|n| {
                at(n) - at(n - 1) + at(n) * at(n + 1) - at(n - 1) * at(n - 2) - self.eps.clone()
            })
            .collect()
    }
}

/// Iterates the parabola recursion up to index `n_max`.
pub fn v_iterate<T: Scalar>(eps: T, x: T, n_max: usize) -> Result<ParabolaOrbit<T>, ParabolaError> {
    if !eps.is_positive() {
        return Err(ParabolaError::NonPositiveEps);
    }
    if x.is_zero_value() {
        return Err(ParabolaError::ZeroInitial);
    }
    let mut v = Vec::with_capacity(n_max + 1);
    v.push(x.clone());
    let mut first_failure = (!x.is_positive()).then_some(0);
    let mut n = 0;
    while first_failure.is_none() && n < n_max {
        let prev = if n == 0 { T::zero() } else { v[n - 1].clone() };
        let next = eps.clone() * T::from_i64(n as i64 + 1) / v[n].clone() - prev - T::one();
        if !next.is_positive() {
            first_failure = Some(n + 1);
        }
        v.push(next);
        n += 1;
    }
    Ok(ParabolaOrbit {
        eps,
        x,
        v,
        first_failure,
    })
}

/// Small-`eps` expansion `eps - 2 eps^2 + 8 eps^3` of the positive initial value.
pub fn vhat_series(eps: f64) -> f64 {
    eps - 2.0 * eps * eps + 8.0 * eps * eps * eps
}

/// Continuum approximation `-1/4 + sqrt(1/16 + n hbar + c)`.
pub fn closed_form_v(n: i64, hbar: f64, c: f64) -> Result<f64, ParabolaError> {
    let radicand = 1.0 / 16.0 + n as f64 * hbar + c;
    if radicand < 0.0 {
        return Err(ParabolaError::InvalidArgument(format!(
            "negative radicand {radicand}"
        )));
    }
    Ok(-0.25 + radicand.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{ratio, Rational};
    use num_traits::Zero;

    #[test]
    fn exact_half_orbit() {
        let o = v_iterate(ratio(1, 1), ratio(1, 2), 10).unwrap();
        let expect = [ratio(1, 2), ratio(1, 1), ratio(1, 2), ratio(4, 1), ratio(-1, 2)];
        assert_eq!(o.v, expect);
        assert_eq!(o.first_failure, Some(4));
        assert_eq!(o.survived_steps(), 4);
        assert!(o.recursion_residuals().iter().all(Rational::is_zero));
        assert!(o.diagonal_residuals().iter().all(Rational::is_zero));
    }

    #[test]
    fn x_equal_eps_dies_immediately() {
        let o = v_iterate(1.0, 1.0, 10).unwrap();
        assert_eq!(o.v[1], 0.0);
        assert_eq!(o.first_failure, Some(1));
    }

    #[test]
    fn second_endpoint_kills_v2() {
        let eps: f64 = 0.1;
        let c2 = 0.5 * (-(1.0 + eps) + ((1.0 + eps).powi(2) + 4.0 * eps).sqrt());
        assert!((c2 - 0.084_429).abs() < 1e-6);
        let o = v_iterate(eps, c2, 5).unwrap();
        assert!(o.v[2].abs() < 1e-12);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert_eq!(v_iterate(1.0, 0.0, 3), Err(ParabolaError::ZeroInitial));
        assert_eq!(v_iterate(0.0, 0.5, 3), Err(ParabolaError::NonPositiveEps));
        assert_eq!(v_iterate(1.0, -0.5, 3).unwrap().first_failure, Some(0));
    }

    #[test]
    fn float_residuals_are_small() {
        let o = v_iterate(0.3, 0.25, 30).unwrap();
        for (n, r) in o.recursion_residuals().iter().enumerate() {
            assert!(r.abs() <= 1e-12 * (0.3 * (n as f64 + 1.0)), "{n}: {r}");
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_v(-1, 0.25, 0.25).unwrap(), 0.0);
        assert_eq!(closed_form_v(0, 0.5, 0.5).unwrap(), 0.5);
        assert!((closed_form_v(100, 0.01, 0.01).unwrap() - 0.785_616).abs() < 1e-6);
        assert!(closed_form_v(-10, 0.1, 0.0).is_err());
    }

    #[test]
    fn series_values() {
        assert_eq!(vhat_series(0.0), 0.0);
        assert!((vhat_series(0.01) - 0.009_808).abs() < 1e-12);
        assert!((vhat_series(0.1) - 0.088).abs() < 1e-12);
    }
}
