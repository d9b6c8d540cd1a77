//! Finite truncations of operator equations: weighted shift matrices,
//! commutators, residuals of the double-commutator equation in Hermitian and
//! W/Z form, the HYM constraint, self-dual equations, the matrix Schild
//! action, and matrix embeddings of the solved surfaces.

mod embed;
mod matrix;
mod residuals;

pub use embed::{
    embed, embed_catenoid, embed_enneper, embed_hyperbola, embed_parabola, moment, Embedded,
    SurfaceData,
};
pub use matrix::{commutator, shift_matrix, DenseMatrix, ShiftOperator, HERMITIAN_TOL};
pub use residuals::{
    hermitian_parts, hym_residual, schild_matrix, selfdual_residual, wz_residual, ym_residual,
    HymReport, NormSummary, ResidualReport, SelfDualReport,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("dimension {dim} too small for shift {shift}")]
    DimensionTooSmall { dim: usize, shift: i64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix {index} is not hermitian")]
    NotHermitian { index: usize },
    #[error("matrix {index} is not unitary")]
    NotUnitary { index: usize },
    #[error("solution data do not cover the requested window: {0}")]
    InsufficientRange(String),
    #[error("at least one matrix is required")]
    Empty,
}
