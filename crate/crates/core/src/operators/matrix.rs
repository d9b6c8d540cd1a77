use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::OperatorError;

/// Absolute tolerance, relative to `max(1, max |entry|)`, for hermitian and
/// unitary claims.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix(DMatrix<Complex64>);

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(DMatrix::from_fn(n, n, f))
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// Wraps a square matrix.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "DenseMatrix must be square");
        Self(m)
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self(&self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest `|entry|` over rows and columns at distance at least `margin`
    /// from both edges.
    pub fn interior_max_abs(&self, margin: usize) -> f64 {
        let n = self.dim();
        if 2 * margin >= n {
            return 0.0;
        }
        self.band_max_abs(margin, n - margin)
    }

    /// Largest `|entry|` with both indices in `lo..hi`.
    pub fn band_max_abs(&self, lo: usize, hi: usize) -> f64 {
        let hi = hi.min(self.dim());
        let mut m: f64 = 0.0;
        for j in lo..hi {
            for i in lo..hi {
                m = m.max(self.0[(i, j)].norm());
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        self.0
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    fn tolerance(&self) -> f64 {
        HERMITIAN_TOL * self.max_abs().max(1.0)
    }

    pub fn is_hermitian(&self) -> bool {
        (self - &self.adjoint()).max_abs() <= self.tolerance()
    }

    pub fn is_unitary(&self) -> bool {
        let n = self.dim();
        (&(&self.adjoint() * self) - &Self::identity(n)).max_abs() <= HERMITIAN_TOL * n.max(1) as f64
    }

    pub fn try_inverse(&self) -> Option<Self> {
        self.0.clone().try_inverse().map(Self)
    }
}

macro_rules! matrix_op {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for &DenseMatrix {
            type Output = DenseMatrix;
            fn $m(self, rhs: &DenseMatrix) -> DenseMatrix {
                DenseMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $tr for DenseMatrix {
            type Output = DenseMatrix;
            fn $m(self, rhs: DenseMatrix) -> DenseMatrix {
                DenseMatrix(self.0 $op rhs.0)
            }
        }
    };
}
matrix_op!(Add, add, +);
matrix_op!(Sub, sub, -);

/// Complex product through four real products, which nalgebra dispatches to
/// its blocked real kernel; the generic complex path is several times slower.
fn complex_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    re.zip_map(&im, Complex64::new)
}

impl Mul for &DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &DenseMatrix) -> DenseMatrix {
        DenseMatrix(complex_product(&self.0, &rhs.0))
    }
}

impl Mul for DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: DenseMatrix) -> DenseMatrix {
        &self * &rhs
    }
}

impl Neg for &DenseMatrix {
    type Output = DenseMatrix;
    fn neg(self) -> DenseMatrix {
        DenseMatrix(-&self.0)
    }
}

/// Weighted shift: column `n` carries the single entry `w_n` in row `n + shift`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftOperator {
    pub dim: usize,
    pub shift: i64,
    /// Indexed by column; columns whose target row lies outside the
    /// truncation are ignored.
    pub weights: Vec<Complex64>,
}

impl ShiftOperator {
    pub fn new(weights: Vec<Complex64>, dim: usize, shift: i64) -> Result<Self, OperatorError> {
        if dim == 0 || dim < shift.unsigned_abs() as usize + 1 {
            return Err(OperatorError::DimensionTooSmall { dim, shift });
        }
        let needed = if shift >= 0 { dim - shift as usize } else { dim };
        if weights.len() < needed {
            return Err(OperatorError::InsufficientRange(format!(
                "{} weights for {needed} columns",
                weights.len()
            )));
        }
        Ok(Self {
            dim,
            shift,
            weights,
        })
    }

    pub fn from_real(weights: &[f64], dim: usize, shift: i64) -> Result<Self, OperatorError> {
        Self::new(
            weights.iter().map(|w| Complex64::new(*w, 0.0)).collect(),
            dim,
            shift,
        )
    }

    fn columns(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim).filter_map(move |n| {
            let row = n as i64 + self.shift;
            (0..self.dim as i64).contains(&row).then_some((row as usize, n))
        })
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim);
        for (row, col) in self.columns() {
            m.0[(row, col)] = self.weights[col];
        }
        m
    }

    /// Shift `-s` with conjugated weights, indexed by the new columns.
    pub fn adjoint(&self) -> Self {
        let mut weights = vec![Complex64::new(0.0, 0.0); self.dim];
        for (row, col) in self.columns() {
            weights[row] = self.weights[col].conj();
        }
        Self {
            dim: self.dim,
            shift: -self.shift,
            weights,
        }
    }
}

/// Dense view of a weighted shift.
pub fn shift_matrix(weights: &[Complex64], dim: usize, shift: i64) -> Result<DenseMatrix, OperatorError> {
    Ok(ShiftOperator::new(weights.to_vec(), dim, shift)?.to_dense())
}

pub fn commutator(a: &DenseMatrix, b: &DenseMatrix) -> Result<DenseMatrix, OperatorError> {
    if a.dim() != b.dim() {
        return Err(OperatorError::DimensionMismatch(a.dim(), b.dim()));
    }
    Ok(&(a * b) - &(b * a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn creation_operator() {
        let w: Vec<_> = (0..4).map(|n| c(((n + 1) as f64).sqrt())).collect();
        let a_dag = shift_matrix(&w, 5, 1).unwrap();
        assert_eq!(a_dag.get(1, 0), c(1.0));
        assert_eq!(a_dag.get(3, 2), c(3f64.sqrt()));
        assert_eq!(a_dag.get(0, 0), c(0.0));
    }

    #[test]
    fn dimension_checks() {
        assert!(matches!(
            shift_matrix(&[], 0, 0),
            Err(OperatorError::DimensionTooSmall { .. })
        ));
        assert!(shift_matrix(&[c(1.0)], 1, 1).is_err());
        assert!(matches!(
            shift_matrix(&[c(1.0)], 3, -1),
            Err(OperatorError::InsufficientRange(_))
        ));
    }

    #[test]
    fn adjoint_is_reverse_shift() {
        let w = vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25), c(3.0), c(4.0)];
        let s = ShiftOperator::new(w, 4, -1).unwrap();
        assert_eq!(s.adjoint().to_dense(), s.to_dense().adjoint());
        assert_eq!(s.adjoint().shift, 1);
    }

    #[test]
    fn commutator_basics() {
        let a = DenseMatrix::from_real_diagonal(&[1.0, 2.0]);
        assert_eq!(commutator(&a, &a).unwrap().max_abs(), 0.0);
        let e = DenseMatrix::from_fn(2, |i, j| c(if i == 0 && j == 1 { 1.0 } else { 0.0 }));
        assert_eq!(commutator(&a, &e).unwrap(), e.scale_real(-1.0));
        assert!(commutator(&a, &DenseMatrix::zeros(3)).is_err());
    }

    #[test]
    fn norms() {
        let a = DenseMatrix::from_real_diagonal(&[3.0, -4.0]);
        assert!((a.spectral_norm() - 4.0).abs() < 1e-12);
        assert!((a.frobenius_norm() - 5.0).abs() < 1e-12);
        assert_eq!(a.interior_max_abs(1), 0.0);
        assert!(a.is_hermitian() && !a.is_unitary());
    }
}
