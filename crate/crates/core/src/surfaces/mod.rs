//! Rotationally symmetric quantized surfaces: the catenoid recursion and its
//! continuum profile, the Enneper radial recursion, the helicoid functional
//! equation and the exactly solvable complex hyperbola.

mod catenoid;
mod enneper;
mod helicoid;
mod hyperbola;

pub use catenoid::{
    catenoid_asymptotic, catenoid_build, catenoid_build_exact, catenoid_classify,
    catenoid_closed, catenoid_closed_branch, catenoid_continuum_residual, invert_area_map,
    CatenoidSolution, Classification, ZBranch, DEFAULT_EXACT_BIT_BUDGET,
};
pub use enneper::{enneper_sigma, enneper_sigma_closed, sigma_step, SigmaSequence};
pub use helicoid::{helicoid_profile, helicoid_residual, helicoid_second_derivative};
pub use hyperbola::{
    hyperbola_r, hyperbola_residual, hyperbola_residual_from, Branch, HyperbolaParams,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SurfaceError {
    #[error("initial data violate 0 < r0 <= r1 <= r0 + 2c^2/r0^2")]
    HypothesisViolated,
    #[error("the constant c must be nonzero")]
    DegenerateConstant,
    #[error("index range must satisfy n_min <= 0 < 1 <= n_max")]
    InvalidRange,
    #[error("all stored r_n are equal")]
    ConstantSolution,
    #[error("stored sequence violates {0}")]
    PropertyViolated(String),
    #[error("exact arithmetic exceeded {budget} bits at n = {n}")]
    HeightBudgetExceeded { n: i64, budget: u64 },
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("r_{n} = {value} is not positive on the chosen branch")]
    NonPositive { n: i64, value: f64 },
}
