use num_complex::Complex64;

use super::matrix::{DenseMatrix, ShiftOperator};
use super::OperatorError;
use crate::surfaces::{hyperbola_r, CatenoidSolution, HyperbolaParams, SigmaSequence};

/// Solution data that can be realized as a pair of truncated matrices.
#[derive(Debug, Clone, Copy)]
pub enum SurfaceData<'a> {
    Catenoid(&'a CatenoidSolution<f64>),
    Enneper(&'a SigmaSequence),
    /// Basis vector `i` carries the index `n_start + i`.
    Hyperbola {
        params: &'a HyperbolaParams,
        n_start: i64,
    },
    /// Orbit `v_0, v_1, ...` with the vacuum at basis vector 0.
    Parabola(&'a [f64]),
}

/// Matrix realization of a surface: `(W, Z)` for the catenoid, `(W, X_3)` for
/// Enneper, `(Z_1, Z_2)` for the hyperbola and parabola.
#[derive(Debug, Clone, PartialEq)]
pub enum Embedded {
    WZ { w: DenseMatrix, z: DenseMatrix },
    HolomorphicPair { z1: DenseMatrix, z2: DenseMatrix },
}

pub fn embed(data: SurfaceData<'_>, dim: usize) -> Result<Embedded, OperatorError> {
    Ok(match data {
        SurfaceData::Catenoid(sol) => {
            let (w, z) = embed_catenoid(sol, dim)?;
            Embedded::WZ { w, z }
        }
        SurfaceData::Enneper(seq) => {
            let (w, z) = embed_enneper(seq, dim)?;
            Embedded::WZ { w, z }
        }
        SurfaceData::Hyperbola { params, n_start } => {
            let (z1, z2) = embed_hyperbola(params, n_start, dim)?;
            Embedded::HolomorphicPair { z1, z2 }
        }
        SurfaceData::Parabola(v) => {
            let (z1, z2) = embed_parabola(v, dim)?;
            Embedded::HolomorphicPair { z1, z2 }
        }
    })
}

/// `W e_i = sqrt(r_n) e_{i-1}`, `Z = diag(z_n)` with `n = n_min + i`,
/// using the first `dim` stored indices.
pub fn embed_catenoid(sol: &CatenoidSolution<f64>, dim: usize) -> Result<(DenseMatrix, DenseMatrix), OperatorError> {
    let r = sol.r_values();
    if r.len() < dim {
        return Err(OperatorError::InsufficientRange(format!(
            "catenoid stores {} indices, need {dim}",
            r.len()
        )));
    }
    let w: Vec<f64> = r[..dim].iter().map(|x| x.sqrt()).collect();
    let w = ShiftOperator::from_real(&w, dim, -1)?.to_dense();
    let z = DenseMatrix::from_real_diagonal(&sol.z_values()[..dim]);
    Ok((w, z))
}

/// `Lambda e_n = sqrt(sigma_n) e_{n-1}`, `W = Lambda^+ - Lambda^3/3`,
/// `X_3 = (Lambda^2 + Lambda^{+2})/2`.
pub fn embed_enneper(seq: &SigmaSequence, dim: usize) -> Result<(DenseMatrix, DenseMatrix), OperatorError> {
    if seq.sigma.len() < dim {
        return Err(OperatorError::InsufficientRange(format!(
            "sigma has {} entries, need {dim}",
            seq.sigma.len()
        )));
    }
    let lambda = ShiftOperator::from_real(&seq.lambda()[..dim], dim, -1)?.to_dense();
    let ld = lambda.adjoint();
    let w = &ld - &lambda.pow(3).scale_real(1.0 / 3.0);
    let x3 = (&lambda.pow(2) + &ld.pow(2)).scale_real(0.5);
    Ok((w, x3))
}

/// `Z_1 e_i = w_n e_{i-1}`, `Z_2 e_i = (|c| / w_{n+1}) e_{i+1}` with
/// `w_n = sqrt(r_n)` and `n = n_start + i`.
pub fn embed_hyperbola(
    params: &HyperbolaParams,
    n_start: i64,
    dim: usize,
) -> Result<(DenseMatrix, DenseMatrix), OperatorError> {
    let w = (0..=dim as i64)
        .map(|i| hyperbola_r(params, n_start + i).map(f64::sqrt))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| OperatorError::InsufficientRange(e.to_string()))?;
    let z1 = ShiftOperator::from_real(&w[..dim], dim, -1)?.to_dense();
    let w2: Vec<f64> = (0..dim).map(|i| params.c_abs / w[i + 1]).collect();
    let z2 = ShiftOperator::from_real(&w2, dim, 1)?.to_dense();
    Ok((z1, z2))
}

/// `Z_1 = W` with `W e_n = sqrt(v_n) e_{n+1}` and `Z_2 = W^2`.
pub fn embed_parabola(v: &[f64], dim: usize) -> Result<(DenseMatrix, DenseMatrix), OperatorError> {
    if v.len() + 1 < dim || v.iter().take(dim.saturating_sub(1)).any(|x| !(*x >= 0.0)) {
        return Err(OperatorError::InsufficientRange(format!(
            "need {} nonnegative orbit values",
            dim.saturating_sub(1)
        )));
    }
    let w: Vec<f64> = v[..dim - 1].iter().map(|x| x.sqrt()).collect();
    let z1 = ShiftOperator::from_real(&w, dim, 1)?.to_dense();
    let z2 = &z1 * &z1;
    Ok((z1, z2))
}

/// `<0| W^+ W (W^+)^2 W^2 ... (W^+)^n W^n |0>` for a raising shift `W`.
pub fn moment(w: &ShiftOperator, n: usize) -> Result<f64, OperatorError> {
    if w.shift != 1 {
        return Err(OperatorError::InsufficientRange(
            "moment needs a raising shift (shift = +1)".into(),
        ));
    }
    if w.dim <= n {
        return Err(OperatorError::InsufficientRange(format!(
            "dimension {} cannot hold W^{n}|0>",
            w.dim
        )));
    }
    let wm = w.to_dense();
    let wd = wm.adjoint();
    let mut vec = nalgebra::DVector::from_element(w.dim, Complex64::new(0.0, 0.0));
    vec[0] = Complex64::new(1.0, 0.0);
    for k in (1..=n).rev() {
        for _ in 0..k {
            vec = wm.as_matrix() * vec;
        }
        for _ in 0..k {
            vec = wd.as_matrix() * vec;
        }
    }
    Ok(vec[0].re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{hym_residual, wz_residual, ym_residual, hermitian_parts};
    use crate::surfaces::catenoid_build;

    #[test]
    fn catenoid_embedding_is_exact_inside() {
        let sol = catenoid_build(1.0, 1.0, 2.0, 0.0, -8, 8).unwrap();
        let (w, z) = embed_catenoid(&sol, 16).unwrap();
        assert_eq!(w.get(0, 1).re, sol.r(-7).unwrap().sqrt());
        let rep = wz_residual(&w, &z, 2).unwrap();
        assert!(rep.interior_norm < 1e-12, "{}", rep.interior_norm);
        let (x1, x2) = hermitian_parts(&w);
        let ym = ym_residual(&[x1, x2, z], 2).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let combined = &ym.residuals[0] + &ym.residuals[1].scale(i);
        assert!((&combined - &rep.residuals[0]).max_abs() < 1e-12);
        assert!((&ym.residuals[2] - &rep.residuals[1]).max_abs() < 1e-12);
    }

    #[test]
    fn hyperbola_pair_commutes_and_solves_hym() {
        let p = HyperbolaParams::new(1.0, 0.0, 1.0).unwrap();
        let (z1, z2) = embed_hyperbola(&p, -4, 8).unwrap();
        let prod = &z1 * &z2;
        for i in 0..7 {
            assert!((prod.get(i, i).re - 1.0).abs() < 1e-14);
        }
        let rep = hym_residual(&z1, &z2, 1.0, 1).unwrap();
        assert!(rep.residual.interior_norm < 1e-13);
        assert!(rep.commutator.interior_norm < 1e-13);
    }

    #[test]
    fn parabola_square() {
        let v = [0.5, 1.0, 0.5, 4.0];
        let (z1, z2) = embed_parabola(&v, 5).unwrap();
        assert_eq!(z2.get(2, 0).re, (0.5f64 * 1.0).sqrt());
        assert!(embed_parabola(&v, 7).is_err());
        let rep = hym_residual(&z1, &z2, 1.0, 0).unwrap();
        // Diagonal rows 0..3 see only computed weights.
        for k in 0..3 {
            assert!(rep.residual.residuals[0].get(k, k).norm() < 1e-14);
        }
    }

    #[test]
    fn moments_are_weight_products() {
        let v: [f64; 5] = [0.5, 1.0, 0.5, 4.0, 2.0];
        let w: Vec<f64> = v.iter().map(|x| x.sqrt()).collect();
        let op = ShiftOperator::from_real(&w, 6, 1).unwrap();
        assert!((moment(&op, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!((moment(&op, 2).unwrap() - 0.5 * 0.5).abs() < 1e-15);
        assert!((moment(&op, 3).unwrap() - 0.5 * 0.5 * 0.25).abs() < 1e-15);
        assert!(moment(&op, 6).is_err());
    }
}
