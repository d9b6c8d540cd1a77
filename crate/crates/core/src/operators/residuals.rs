use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{commutator, DenseMatrix};
use super::OperatorError;

/// Residual matrices of an operator equation and their norms.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub residuals: Vec<DenseMatrix>,
    /// Max-entry norm on the interior band, per residual.
    pub interior_norms: Vec<f64>,
    /// Largest of `interior_norms`.
    pub interior_norm: f64,
    /// Spectral norm of the full residual, per residual.
    pub spectral_norms: Vec<f64>,
    pub boundary_margin: usize,
}

impl ResidualReport {
    fn new(residuals: Vec<DenseMatrix>, margin: usize) -> Self {
        let interior_norms: Vec<f64> = residuals.iter().map(|r| r.interior_max_abs(margin)).collect();
        let spectral_norms = residuals.iter().map(DenseMatrix::spectral_norm).collect();
        Self {
            interior_norm: interior_norms.iter().copied().fold(0.0, f64::max),
            interior_norms,
            spectral_norms,
            residuals,
            boundary_margin: margin,
        }
    }

    pub fn summary(&self) -> NormSummary {
        NormSummary {
            interior_norm: self.interior_norm,
            interior_norms: self.interior_norms.clone(),
            spectral_norms: self.spectral_norms.clone(),
            boundary_margin: self.boundary_margin,
        }
    }
}

/// Serializable norms of a [`ResidualReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormSummary {
    pub interior_norm: f64,
    pub interior_norms: Vec<f64>,
    pub spectral_norms: Vec<f64>,
    pub boundary_margin: usize,
}

fn same_dims(ms: &[&DenseMatrix]) -> Result<usize, OperatorError> {
    let first = ms.first().ok_or(OperatorError::Empty)?.dim();
    for m in ms {
        if m.dim() != first {
            return Err(OperatorError::DimensionMismatch(first, m.dim()));
        }
    }
    Ok(first)
}

fn require_hermitian(ms: &[&DenseMatrix]) -> Result<(), OperatorError> {
    match ms.iter().position(|m| !m.is_hermitian()) {
        Some(index) => Err(OperatorError::NotHermitian { index }),
        None => Ok(()),
    }
}

fn comm(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    commutator(a, b).expect("dimensions checked")
}

/// `sum_i [X_i, [X_i, X_j]]` for every `j`.
pub fn ym_residual(xs: &[DenseMatrix], margin: usize) -> Result<ResidualReport, OperatorError> {
    let refs: Vec<&DenseMatrix> = xs.iter().collect();
    same_dims(&refs)?;
    require_hermitian(&refs)?;
    let n = xs[0].dim();
    let residuals = xs
        .iter()
        .map(|xj| {
            xs.iter()
                .fold(DenseMatrix::zeros(n), |acc, xi| &acc + &comm(xi, &comm(xi, xj)))
        })
        .collect();
    Ok(ResidualReport::new(residuals, margin))
}

/// `Delta(W) = 1/2 [W,[W^+,W]] + [Z,[Z,W]]` and
/// `Delta(Z) = 1/2 [W,[W^+,Z]] + 1/2 [W^+,[W,Z]]`, in that order.
pub fn wz_residual(w: &DenseMatrix, z: &DenseMatrix, margin: usize) -> Result<ResidualReport, OperatorError> {
    same_dims(&[w, z])?;
    if !z.is_hermitian() {
        return Err(OperatorError::NotHermitian { index: 1 });
    }
    let wd = w.adjoint();
    let dw = &comm(w, &comm(&wd, w)).scale_real(0.5) + &comm(z, &comm(z, w));
    let dz = (&comm(w, &comm(&wd, z)) + &comm(&wd, &comm(w, z))).scale_real(0.5);
    Ok(ResidualReport::new(vec![dw, dz], margin))
}

/// `X_1 = (W + W^+)/2`, `X_2 = (W - W^+)/2i`.
pub fn hermitian_parts(w: &DenseMatrix) -> (DenseMatrix, DenseMatrix) {
    let wd = w.adjoint();
    let x1 = (w + &wd).scale_real(0.5);
    let x2 = (w - &wd).scale(Complex64::new(0.0, -0.5));
    (x1, x2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HymReport {
    /// `[Z1^+, Z1] + [Z2^+, Z2] - eps I`.
    pub residual: ResidualReport,
    /// `[Z1, Z2]`, with its interior and spectral norms.
    pub commutator: ResidualReport,
}

pub fn hym_residual(
    z1: &DenseMatrix,
    z2: &DenseMatrix,
    eps: f64,
    margin: usize,
) -> Result<HymReport, OperatorError> {
    let n = same_dims(&[z1, z2])?;
    let r = &(&comm(&z1.adjoint(), z1) + &comm(&z2.adjoint(), z2))
        - &DenseMatrix::identity(n).scale_real(eps);
    Ok(HymReport {
        residual: ResidualReport::new(vec![r], margin),
        commutator: ResidualReport::new(vec![comm(z1, z2)], margin),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfDualReport {
    /// `[X4,X1] - [X2,X3]`, `[X4,X2] - [X3,X1]`, `[X4,X3] - [X1,X2]`.
    pub residuals: [DenseMatrix; 3],
    pub max_abs: [f64; 3],
    pub spectral_norms: [f64; 3],
}

pub fn selfdual_residual(xs: &[DenseMatrix; 4]) -> Result<SelfDualReport, OperatorError> {
    let refs: Vec<&DenseMatrix> = xs.iter().collect();
    same_dims(&refs)?;
    require_hermitian(&refs)?;
    let [x1, x2, x3, x4] = xs;
    let residuals = [
        &comm(x4, x1) - &comm(x2, x3),
        &comm(x4, x2) - &comm(x3, x1),
        &comm(x4, x3) - &comm(x1, x2),
    ];
    let max_abs = [0, 1, 2].map(|k| residuals[k].max_abs());
    let spectral_norms = [0, 1, 2].map(|k| residuals[k].spectral_norm());
    Ok(SelfDualReport {
        residuals,
        max_abs,
        spectral_norms,
    })
}

/// Matrix Schild action `-(2 pi)^2 N Tr sum_{i<j} [X_i, X_j]^2`.
pub fn schild_matrix(xs: &[DenseMatrix]) -> Result<f64, OperatorError> {
    let refs: Vec<&DenseMatrix> = xs.iter().collect();
    let n = same_dims(&refs)?;
    require_hermitian(&refs)?;
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..xs.len() {
        for j in (i + 1)..xs.len() {
            let c = comm(&xs[i], &xs[j]);
            tr += (&c * &c).trace();
        }
    }
    Ok(-(2.0 * PI).powi(2) * n as f64 * tr.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli_halves() -> [DenseMatrix; 3] {
        let z = Complex64::new(0.0, 0.0);
        let h = Complex64::new(0.5, 0.0);
        let i = Complex64::new(0.0, 0.5);
        [
            DenseMatrix::from_fn(2, |r, c| if r != c { h } else { z }),
            DenseMatrix::from_fn(2, |r, c| match (r, c) {
                (0, 1) => -i,
                (1, 0) => i,
                _ => z,
            }),
            DenseMatrix::from_real_diagonal(&[0.5, -0.5]),
        ]
    }

    #[test]
    fn commuting_families_vanish() {
        let xs = vec![
            DenseMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]),
            DenseMatrix::from_real_diagonal(&[0.0, -1.0, 5.0]),
        ];
        assert_eq!(ym_residual(&xs, 0).unwrap().interior_norm, 0.0);
        assert_eq!(schild_matrix(&xs).unwrap(), 0.0);
    }

    #[test]
    fn pauli_schild_action() {
        let s = schild_matrix(&pauli_halves()).unwrap();
        assert!((s - 3.0 * (2.0 * PI).powi(2)).abs() < 1e-10, "{s}");
    }

    #[test]
    fn pauli_self_dual() {
        let [a, b, c] = pauli_halves();
        let xs = [a.clone(), b.clone(), c.clone(), DenseMatrix::zeros(2)];
        let r = selfdual_residual(&xs).unwrap();
        assert!((r.spectral_norms[0] - 0.5).abs() < 1e-12);
        let shifted = [a, b, c, DenseMatrix::identity(2)];
        let r2 = selfdual_residual(&shifted).unwrap();
        assert_eq!(r.residuals, r2.residuals);
    }

    #[test]
    fn non_hermitian_rejected() {
        let w = DenseMatrix::from_fn(2, |r, c| Complex64::new((r + 2 * c) as f64, 0.0));
        assert_eq!(
            ym_residual(std::slice::from_ref(&w), 0).unwrap_err(),
            OperatorError::NotHermitian { index: 0 }
        );
        assert!(wz_residual(&w, &w, 0).is_err());
        assert!(wz_residual(&w, &DenseMatrix::identity(2), 0).is_ok());
    }

    #[test]
    fn hym_of_zero_is_minus_eps() {
        let z = DenseMatrix::zeros(4);
        let r = hym_residual(&z, &z, 1.0, 0).unwrap();
        assert_eq!(r.residual.interior_norm, 1.0);
        assert!((r.residual.spectral_norms[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_w_gives_zero_wz_residual() {
        let z = DenseMatrix::from_fn(3, |r, c| Complex64::new((r + c) as f64, 0.0));
        let rep = wz_residual(&DenseMatrix::zeros(3), &z, 0).unwrap();
        assert_eq!(rep.interior_norm, 0.0);
    }
}
