//! Unitary and spherical matrix maps: clock and shift matrices, the unitary
//! Schild action and its equations of motion, and the quantum degree of
//! almost-commuting maps to the torus and to the sphere.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::operators::{commutator, DenseMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TorusError {
    #[error("matrix {index} is not unitary")]
    NotUnitary { index: usize },
    #[error("matrix {index} is not hermitian")]
    NotHermitian { index: usize },
    #[error("sum of squares deviates from the identity by {deviation}")]
    ConstraintViolated { deviation: f64 },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("dimension must be at least 2, got {0}")]
    TooSmall(usize),
}

/// Tolerance on `sum X_i^2 - I` for sphere maps.
pub const SPHERE_CONSTRAINT_TOL: f64 = 1e-10;

/// Unitary matrices of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryTuple {
    phis: Vec<DenseMatrix>,
}

impl UnitaryTuple {
    pub fn new(phis: Vec<DenseMatrix>) -> Result<Self, TorusError> {
        let dim = phis.first().map_or(0, DenseMatrix::dim);
        for (index, p) in phis.iter().enumerate() {
            if p.dim() != dim {
                return Err(TorusError::DimensionMismatch(dim, p.dim()));
            }
            if !p.is_unitary() {
                return Err(TorusError::NotUnitary { index });
            }
        }
        Ok(Self { phis })
    }

    pub fn dim(&self) -> usize {
        self.phis.first().map_or(0, DenseMatrix::dim)
    }

    pub fn matrices(&self) -> &[DenseMatrix] {
        &self.phis
    }

    pub fn into_matrices(self) -> Vec<DenseMatrix> {
        self.phis
    }
}

/// Group commutator `A B A^{-1} B^{-1}` of unitaries.
fn group_commutator(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    &(&(a * b) * &a.adjoint()) * &b.adjoint()
}

fn unit_root(n: usize, k: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (k % n) as f64 / n as f64)
}

/// Cyclic shift `Phi_1 e_k = e_{k-1}` and clock `Phi_2 = diag(omega^k)`,
/// `omega = exp(2 pi i / N)`.
///
/// With this orientation the group commutator is `Phi_1 Phi_2 Phi_1^{-1}
/// Phi_2^{-1} = omega I`, so the torus degree is `+1`.
pub fn clock_shift(n: usize) -> Result<UnitaryTuple, TorusError> {
    if n < 2 {
        return Err(TorusError::TooSmall(n));
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let shift = DenseMatrix::from_fn(n, |i, j| if j == (i + 1) % n { one } else { zero });
    let clock = DenseMatrix::from_fn(n, |i, j| if i == j { unit_root(n, i) } else { zero });
    UnitaryTuple::new(vec![shift, clock])
}

/// `N sum_{i<j} Tr(2 I - Phi_i Phi_j Phi_i^{-1} Phi_j^{-1} - Phi_j Phi_i Phi_j^{-1} Phi_i^{-1})`.
///
/// The two group commutators are adjoint to each other, so the trace is
/// real; the imaginary rounding residue is discarded.
pub fn unitary_schild(tuple: &UnitaryTuple) -> f64 {
    let phis = tuple.matrices();
    let n = tuple.dim();
    let mut total = Complex64::new(0.0, 0.0);
    for i in 0..phis.len() {
        for j in (i + 1)..phis.len() {
            let a = group_commutator(&phis[i], &phis[j]);
            let b = group_commutator(&phis[j], &phis[i]);
            total += Complex64::new(2.0 * n as f64, 0.0) - a.trace() - b.trace();
        }
    }
    debug_assert!(total.im.abs() <= 1e-9 * total.norm().max(1.0));
    n as f64 * total.re
}

/// Equations of motion of the unitary Schild action, one residual per `Phi_i`:
/// `sum_{j != i} (Phi_i Phi_j Phi_i^{-1} Phi_j^{-1} - Phi_j^{-1} Phi_i Phi_j Phi_i^{-1}
///   + Phi_i Phi_j^{-1} Phi_i^{-1} Phi_j - Phi_j Phi_i Phi_j^{-1} Phi_i^{-1})`.
#[derive(Debug, Clone, PartialEq)]
pub struct EomReport {
    pub residuals: Vec<DenseMatrix>,
    /// Max-entry norm per residual.
    pub norms: Vec<f64>,
}

pub fn torus_eom_residual(tuple: &UnitaryTuple) -> EomReport {
    let phis = tuple.matrices();
    let n = tuple.dim();
    let residuals: Vec<DenseMatrix> = (0..phis.len())
        .map(|i| {
            let pi = &phis[i];
            let pi_inv = pi.adjoint();
            (0..phis.len()).filter(|&j| j != i).fold(DenseMatrix::zeros(n), |acc, j| {
                let pj = &phis[j];
                let pj_inv = pj.adjoint();
                let t1 = &(&(pi * pj) * &pi_inv) * &pj_inv;
                let t2 = &(&(&pj_inv * pi) * pj) * &pi_inv;
                let t3 = &(&(pi * &pj_inv) * &pi_inv) * pj;
                let t4 = &(&(pj * pi) * &pj_inv) * &pi_inv;
                &(&(&(&acc + &t1) - &t2) + &t3) - &t4
            })
        })
        .collect();
    let norms = residuals.iter().map(DenseMatrix::max_abs).collect();
    EomReport { residuals, norms }
}

/// Quantum degree of an almost-commuting pair or triple.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    pub trace_value: Complex64,
    pub k_estimate: i64,
    /// Largest spectral norm of a pairwise commutator.
    pub defect: f64,
    /// Largest Frobenius norm of a pairwise commutator.
    pub defect_frobenius: f64,
    pub dim: usize,
}

impl DegreeReport {
    /// `N * defect`, the constant `c` in a bound `defect <= c / N`.
    pub fn defect_constant(&self) -> f64 {
        self.dim as f64 * self.defect
    }

    /// Whether `|k| < c / (2 pi)` holds at this `N`. The bound is asymptotic,
    /// so a violation at finite `N` is reported, not treated as an error.
    pub fn torus_bound_holds(&self) -> bool {
        (self.k_estimate.unsigned_abs() as f64) < self.defect_constant() / (2.0 * PI)
    }
}

/// Largest spectral norm of `[A_i, A_j]` over all pairs.
pub fn commutator_defect(mats: &[DenseMatrix]) -> f64 {
    defects(mats).0
}

fn defects(mats: &[DenseMatrix]) -> (f64, f64) {
    let mut spectral: f64 = 0.0;
    let mut frob: f64 = 0.0;
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            let c = commutator(&mats[i], &mats[j]).expect("equal dimensions");
            spectral = spectral.max(c.spectral_norm());
            frob = frob.max(c.frobenius_norm());
        }
    }
    (spectral, frob)
}

/// `Tr(Psi - I)` with `Psi = Phi_1 Phi_2 Phi_1^{-1} Phi_2^{-1}`;
/// `k = round(Im / 2 pi)`.
pub fn torus_degree(p1: &DenseMatrix, p2: &DenseMatrix) -> Result<DegreeReport, TorusError> {
    let tuple = UnitaryTuple::new(vec![p1.clone(), p2.clone()])?;
    let n = tuple.dim();
    let psi = group_commutator(p1, p2);
    let trace_value = psi.trace() - Complex64::new(n as f64, 0.0);
    let (defect, defect_frobenius) = defects(tuple.matrices());
    Ok(DegreeReport {
        trace_value,
        k_estimate: (trace_value.im / (2.0 * PI)).round() as i64,
        defect,
        defect_frobenius,
        dim: n,
    })
}

/// Spin-`j` generators scaled so that `X_1^2 + X_2^2 + X_3^2 = I`,
/// `j = (N - 1)/2`, basis ordered by decreasing `m`.
pub fn fuzzy_sphere(n: usize) -> Result<[DenseMatrix; 3], TorusError> {
    if n < 2 {
        return Err(TorusError::TooSmall(n));
    }
    let j = (n as f64 - 1.0) / 2.0;
    let casimir = j * (j + 1.0);
    let m = |i: usize| j - i as f64;
    // L_+ e_i = sqrt(j(j+1) - m(m+1)) e_{i-1}
    let raise = |i: usize| (casimir - m(i) * (m(i) + 1.0)).sqrt();
    let zero = Complex64::new(0.0, 0.0);
    let lp = DenseMatrix::from_fn(n, |r, c| {
        if c >= 1 && r == c - 1 {
            Complex64::new(raise(c), 0.0)
        } else {
            zero
        }
    });
    let lm = lp.adjoint();
    let scale = 1.0 / casimir.sqrt();
    let x1 = (&lp + &lm).scale_real(0.5 * scale);
    let x2 = (&lp - &lm).scale(Complex64::new(0.0, -0.5 * scale));
    let x3 = DenseMatrix::from_fn(n, |r, c| {
        if r == c {
            Complex64::new(m(r) * scale, 0.0)
        } else {
            zero
        }
    });
    Ok([x1, x2, x3])
}

/// `Tr(X_1 [X_2, X_3])`, `k = round(3 Im / 2)`.
pub fn sphere_degree(x1: &DenseMatrix, x2: &DenseMatrix, x3: &DenseMatrix) -> Result<DegreeReport, TorusError> {
    let n = x1.dim();
    for (index, x) in [x1, x2, x3].into_iter().enumerate() {
        if x.dim() != n {
            return Err(TorusError::DimensionMismatch(n, x.dim()));
        }
        if !x.is_hermitian() {
            return Err(TorusError::NotHermitian { index });
        }
    }
    let deviation = (&(&(&(x1 * x1) + &(x2 * x2)) + &(x3 * x3)) - &DenseMatrix::identity(n)).max_abs();
    if deviation > SPHERE_CONSTRAINT_TOL {
        return Err(TorusError::ConstraintViolated { deviation });
    }
    let c = commutator(x2, x3).expect("equal dimensions");
    let trace_value = (x1 * &c).trace();
    let mats = [x1.clone(), x2.clone(), x3.clone()];
    let (defect, defect_frobenius) = defects(&mats);
    Ok(DegreeReport {
        trace_value,
        k_estimate: (1.5 * trace_value.im).round() as i64,
        defect,
        defect_frobenius,
        dim: n,
    })
}
