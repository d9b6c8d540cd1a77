//! Exact rational arithmetic, univariate polynomials over the rationals,
//! reduced rational functions and the bracketing root kernel shared by the
//! surface and parabola solvers.

mod poly;
mod ratfn;
mod rational;
mod roots;

pub use poly::{poly_exact_div, Poly};
pub use ratfn::{ratfn_reduce, RatFn};
pub use rational::{parse_rational, rational_to_f64, ratio, Rational};
pub use roots::{find_root_bisect, find_root_bisect_full, Bracket};

use thiserror::Error;

/// Failures of the exact-arithmetic kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MathError {
    #[error("polynomial division left a nonzero remainder of degree {remainder_degree}")]
    NotDivisible { remainder_degree: usize },
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),
    #[error("cannot parse `{0}` as a rational number")]
    Parse(String),
}
