//! Quantized minimal surfaces.
//!
//! Recursions and closed forms for the quantized catenoid, Enneper surface,
//! helicoid, complex hyperbola and complex parabola; exact rational
//! polynomial and tau-function arithmetic; and residual evaluators for the
//! matrix-model equations on finite truncations.

// `!(x > 0.0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod exactmath;
pub mod operators;
pub mod parabola;
pub mod scalar;
pub mod surfaces;
pub mod torusdegree;
