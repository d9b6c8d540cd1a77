//! The complex parabola `Z2 = Z1^2`: the nonlinear `v_n` recursion, the
//! shooting solver for its unique everywhere-positive orbit, exact
//! u-polynomials and tau-functions with their conserved quantities, and the
//! two-monomial generalization.

mod monomial;
mod orbit;
mod shooting;
mod tau;

pub use monomial::{monomial_pair_iterate, monomial_pair_search, MonomialOrbit, SeedSearch};
pub use orbit::{closed_form_v, v_iterate, vhat_series, ParabolaOrbit};
pub use shooting::{
    interval_endpoints, vhat_bisect, vhat_bisect_extended, vhat_bisect_in, FailureSide,
    ShootingResult, DEFAULT_EXTENDED_BITS,
};
pub use tau::{conserved_residual, tau_table, u_exact, TauTable};

use thiserror::Error;

use crate::exactmath::MathError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParabolaError {
    #[error("the initial value x must be nonzero")]
    ZeroInitial,
    #[error("eps must be positive")]
    NonPositiveEps,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bracket [{lo}, {hi}] no longer separates the two failure parities")]
    BracketLost { lo: f64, hi: f64 },
    /// Carries the endpoints `c_0..=c_reached` located before the failure.
    #[error("working precision exhausted after locating c_{reached}")]
    PrecisionExhausted { reached: usize, endpoints: Vec<f64> },
    #[error("coefficient of the unknown vanishes at n = {n}")]
    ZeroProductPivot { n: usize },
    #[error("tau_{n} does not factor as u_(n-1) u_(n-2) u_(n-3)")]
    Factorization { n: usize },
    #[error("index {n} outside the computed table")]
    OutOfRange { n: i64 },
    #[error(transparent)]
    Math(#[from] MathError),
}
