use serde::{Deserialize, Serialize};

use super::SurfaceError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Branch {
    #[default]
    Plus,
    Minus,
}

/// Parameters of the exact complex-hyperbola solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperbolaParams {
    pub eps: f64,
    pub delta: f64,
    pub c_abs: f64,
    pub branch: Branch,
}

impl HyperbolaParams {
    pub fn new(eps: f64, delta: f64, c_abs: f64) -> Result<Self, SurfaceError> {
        if !(eps > 0.0 && c_abs > 0.0) || !delta.is_finite() {
            return Err(SurfaceError::DomainError(
                "eps and |c| must be positive, delta finite".into(),
            ));
        }
        Ok(Self {
            eps,
            delta,
            c_abs,
            branch: Branch::Plus,
        })
    }

    pub fn with_branch(self, branch: Branch) -> Self {
        Self { branch, ..self }
    }
}

/// `r_n = b ± sqrt(b^2 + |c|^2)` with `b = (-eps n + delta)/2`.
///
/// The `+` root is evaluated as `|c|^2 / (sqrt(b^2+|c|^2) - b)` when `b < 0`
/// to avoid cancellation. The `-` root is always negative.
pub fn hyperbola_r(params: &HyperbolaParams, n: i64) -> Result<f64, SurfaceError> {
    let b = 0.5 * (-params.eps * n as f64 + params.delta);
    let c2 = params.c_abs * params.c_abs;
    let root = b.hypot(params.c_abs);
    let r = match params.branch {
        Branch::Plus if b >= 0.0 => b + root,
        Branch::Plus => c2 / (root - b),
        Branch::Minus if b <= 0.0 => b - root,
        Branch::Minus => -c2 / (root + b),
    };
    if r > 0.0 {
        Ok(r)
    } else {
        Err(SurfaceError::NonPositive { n, value: r })
    }
}

/// `r_n - r_{n+1} + |c|^2/r_{n+1} - |c|^2/r_n - eps` in the factored form
/// `(r_n - r_{n+1})(1 + |c|^2/(r_n r_{n+1})) - eps`.
pub fn hyperbola_residual_from(params: &HyperbolaParams, rn: f64, rn1: f64) -> f64 {
    let c2 = params.c_abs * params.c_abs;
    (rn - rn1) * (1.0 + c2 / (rn * rn1)) - params.eps
}

pub fn hyperbola_residual(params: &HyperbolaParams, n: i64) -> Result<f64, SurfaceError> {
    let rn = hyperbola_r(params, n)?;
    let rn1 = hyperbola_r(params, n + 1)?;
    Ok(hyperbola_residual_from(params, rn, rn1))
}
