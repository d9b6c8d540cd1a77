use serde::{Deserialize, Serialize};

use super::SurfaceError;
use crate::exactmath::{find_root_bisect_full, Rational};
use crate::scalar::Scalar;

/// Default bit budget for exact catenoid builds. Heights roughly triple per
/// step, so this admits about a dozen steps on either side of the seed.
pub const DEFAULT_EXACT_BIT_BUDGET: u64 = 1 << 16;

/// Solution `(r_n, z_n)` of the catenoid recursion on `n_min..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatenoidSolution<T = f64> {
    pub c: T,
    pub z0: T,
    pub n_min: i64,
    pub n_max: i64,
    r: Vec<T>,
    z: Vec<T>,
}

impl<T: Scalar> CatenoidSolution<T> {
    fn slot(&self, n: i64) -> Option<usize> {
        (self.n_min..=self.n_max)
            .contains(&n)
            .then(|| (n - self.n_min) as usize)
    }

    pub fn r(&self, n: i64) -> Option<&T> {
        self.slot(n).map(|i| &self.r[i])
    }

    pub fn z(&self, n: i64) -> Option<&T> {
        self.slot(n).map(|i| &self.z[i])
    }

    pub fn r_values(&self) -> &[T] {
        &self.r
    }

    pub fn z_values(&self) -> &[T] {
        &self.z
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.n_min..=self.n_max
    }

    /// Relabels `n -> n + k`.
    pub fn shifted(&self, k: i64) -> Self {
        Self {
            n_min: self.n_min + k,
            n_max: self.n_max + k,
            ..self.clone()
        }
    }

    /// Residuals `2(z_n - z_{n-1})^2 - (r_{n+1} + r_{n-1} - 2 r_n)` and
    /// `r_n (z_n - z_{n-1}) - c` for every interior `n`.
    pub fn residuals(&self) -> Vec<(i64, T, T)> {
        ((self.n_min + 1)..self.n_max)
            .map(|n| {
                let i = (n - self.n_min) as usize;
                let dz = self.z[i].clone() - self.z[i - 1].clone();
                let two = T::from_i64(2);
                let second = self.r[i + 1].clone() + self.r[i - 1].clone()
                    - two.clone() * self.r[i].clone();
                let a = two * dz.clone() * dz.clone() - second;
                let b = self.r[i].clone() * dz - self.c.clone();
                (n, a, b)
            })
            .collect()
    }

    /// Positivity, the two-sided monotone shape around `n = 0`, and strict
    /// monotonicity of `z` with the sign of `c`.
    pub fn check_shape(&self) -> Result<(), SurfaceError> {
        for (i, r) in self.r.iter().enumerate() {
            if !r.is_positive() {
                let n = self.n_min + i as i64;
                return Err(SurfaceError::PropertyViolated(format!("r_{n} > 0")));
            }
        }
        for n in 0..self.n_max {
            if self.r(n + 1) < self.r(n) {
                return Err(SurfaceError::PropertyViolated(format!("r_{} >= r_{n}", n + 1)));
            }
        }
        for n in (self.n_min + 1)..=0 {
            if self.r(n - 1) < self.r(n) {
                return Err(SurfaceError::PropertyViolated(format!("r_{} >= r_{n}", n - 1)));
            }
        }
        self.check_z_monotone()
    }

    fn check_z_monotone(&self) -> Result<(), SurfaceError> {
        let up = self.c.is_positive();
        for w in self.z.windows(2) {
            let ok = if up { w[1] > w[0] } else { w[1] < w[0] };
            if !ok {
                return Err(SurfaceError::PropertyViolated(
                    "strict monotonicity of z".to_string(),
                ));
            }
        }
        Ok(())
    }

    pub fn to_f64(&self) -> CatenoidSolution<f64> {
        CatenoidSolution {
            c: self.c.to_f64(),
            z0: self.z0.to_f64(),
            n_min: self.n_min,
            n_max: self.n_max,
            r: self.r.iter().map(Scalar::to_f64).collect(),
            z: self.z.iter().map(Scalar::to_f64).collect(),
        }
    }
}

fn build<T: Scalar>(
    c: T,
    r0: T,
    r1: T,
    z0: T,
    n_min: i64,
    n_max: i64,
    mut guard: impl FnMut(i64, &T) -> Result<(), SurfaceError>,
) -> Result<CatenoidSolution<T>, SurfaceError> {
    if c.is_zero_value() {
        return Err(SurfaceError::DegenerateConstant);
    }
    if n_min > 0 || n_max < 1 {
        return Err(SurfaceError::InvalidRange);
    }
    let two = T::from_i64(2);
    let kick = |r: &T| two.clone() * c.clone() * c.clone() / (r.clone() * r.clone());
    if !r0.is_positive() || r1 < r0 || r1 > r0.clone() + kick(&r0) {
        return Err(SurfaceError::HypothesisViolated);
    }

    let forward = (n_max + 1) as usize;
    let backward = (-n_min) as usize;
    let mut up = Vec::with_capacity(forward);
    up.push(r0.clone());
    up.push(r1);
    for n in 2..=n_max {
        let k = n as usize;
        let next = two.clone() * up[k - 1].clone() - up[k - 2].clone() + kick(&up[k - 1]);
        guard(n, &next)?;
        up.push(next);
    }
    // down[j] holds r_{-j}
    let mut down: Vec<T> = Vec::with_capacity(backward + 2);
    down.push(r0);
    down.push(up[1].clone());
    for j in 1..=backward {
        let (a, b) = if j == 1 {
            (up[0].clone(), up[1].clone())
        } else {
            (down[j - 1].clone(), down[j - 2].clone())
        };
        let next = two.clone() * a.clone() - b + kick(&a);
        guard(-(j as i64), &next)?;
        if j == 1 {
            down[1] = next;
        } else {
            down.push(next);
        }
    }
    down.truncate(backward + 1);

    let mut r: Vec<T> = down[1..].iter().rev().cloned().collect();
    r.extend(up);

    let origin = backward;
    let mut z = vec![T::zero(); r.len()];
    z[origin] = z0.clone();
    for i in (origin + 1)..r.len() {
        z[i] = z[i - 1].clone() + c.clone() / r[i].clone();
    }
    for i in (0..origin).rev() {
        z[i] = z[i + 1].clone() - c.clone() / r[i + 1].clone();
    }
    Ok(CatenoidSolution {
        c,
        z0,
        n_min,
        n_max,
        r,
        z,
    })
}

/// Extends `(r_0, r_1, z_0)` in both directions in double precision.
pub fn catenoid_build(
    c: f64,
    r0: f64,
    r1: f64,
    z0: f64,
    n_min: i64,
    n_max: i64,
) -> Result<CatenoidSolution<f64>, SurfaceError> {
    build(c, r0, r1, z0, n_min, n_max, |n, r| {
        if r.is_finite() {
            Ok(())
        } else {
            Err(SurfaceError::DomainError(format!("r_{n} overflowed")))
        }
    })
}

/// Exact-rational build. Fails with `HeightBudgetExceeded` once a value needs
/// more than `bit_budget` bits of numerator plus denominator.
pub fn catenoid_build_exact(
    c: Rational,
    r0: Rational,
    r1: Rational,
    z0: Rational,
    n_min: i64,
    n_max: i64,
    bit_budget: u64,
) -> Result<CatenoidSolution<Rational>, SurfaceError> {
    build(c, r0, r1, z0, n_min, n_max, |n, r| {
        if r.numer().bits() + r.denom().bits() > bit_budget {
            Err(SurfaceError::HeightBudgetExceeded { n, budget: bit_budget })
        } else {
            Ok(())
        }
    })
}

/// Normal form of a positive non-constant solution over its stored range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub n0: i64,
    pub delta: f64,
    pub c: f64,
    /// `r_{n+1} > r_n` holds for every stored `n >= monotone_up_from`.
    pub monotone_up_from: i64,
    /// `r_{n-1} > r_n` holds for every stored `n <= monotone_down_to`.
    pub monotone_down_to: i64,
    /// The minimum sits on the edge of the stored range, so the true global
    /// minimum may lie outside it.
    pub boundary_warning: bool,
}

pub fn catenoid_classify<T: Scalar>(sol: &CatenoidSolution<T>) -> Result<Classification, SurfaceError> {
    let r = sol.r_values();
    let mut best = 0;
    for (i, v) in r.iter().enumerate() {
        if *v < r[best] {
            best = i;
        }
    }
    if r.iter().all(|v| *v == r[0]) {
        return Err(SurfaceError::ConstantSolution);
    }
    let n0 = sol.n_min + best as i64;
    let boundary_warning = n0 == sol.n_min || n0 == sol.n_max;
    if boundary_warning {
        log::warn!("minimum of r at the boundary index {n0}; classification is range-limited");
    }
    let delta = match sol.r(n0 + 1) {
        Some(next) => {
            let rmin = &r[best];
            let c2 = sol.c.clone() * sol.c.clone();
            let d = T::one() - (next.clone() - rmin.clone()) * rmin.clone() * rmin.clone() / c2;
            d.to_f64()
        }
        None => f64::NAN,
    };
    if delta.is_finite() && !(delta > -1.0 && delta <= 1.0) {
        return Err(SurfaceError::PropertyViolated(format!("delta = {delta} in (-1, 1]")));
    }
    for n in (n0 + 1)..sol.n_max {
        if sol.r(n + 1) <= sol.r(n) {
            return Err(SurfaceError::PropertyViolated(format!("r_{} > r_{n}", n + 1)));
        }
    }
    for n in (sol.n_min + 1)..=n0 {
        if sol.r(n - 1) <= sol.r(n) {
            return Err(SurfaceError::PropertyViolated(format!("r_{} > r_{n}", n - 1)));
        }
    }
    sol.check_z_monotone()?;
    Ok(Classification {
        n0,
        delta,
        c: sol.c.to_f64(),
        monotone_up_from: n0 + 1,
        monotone_down_to: n0,
        boundary_warning,
    })
}

/// Solves `p = (a^2/2)(q + sinh(2q)/2)` for `q`. The map is odd and strictly
/// increasing, so the root is bracketed by `[0, |p|/a^2]` and bisected down to
/// adjacent doubles.
pub fn invert_area_map(p: f64, a: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    let a2 = a * a;
    let target = p.abs();
    let f = |q: f64| 0.5 * a2 * (q + 0.5 * (2.0 * q).sinh()) - target;
    // sinh(2q) >= 2q gives q <= |p|/a^2; sinh(2q)/2 <= 2|p|/a^2 gives the other bound.
    let hi = (target / a2).min(0.5 * (4.0 * target / a2).asinh()) * (1.0 + 1e-12) + 1e-300;
    let b = find_root_bisect_full(f, 0.0, hi, f64::MIN_POSITIVE).expect("bracket is valid");
    b.midpoint().copysign(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ZBranch {
    #[default]
    Plus,
    Minus,
}

/// Discretized continuum catenoid `(a^2 cosh^2 q(-hbar n), a q(-hbar n))`
/// with zero offsets and the `+` branch.
pub fn catenoid_closed(a: f64, hbar: f64, n: i64) -> Result<(f64, f64), SurfaceError> {
    catenoid_closed_branch(a, hbar, n, ZBranch::Plus)
}

pub fn catenoid_closed_branch(
    a: f64,
    hbar: f64,
    n: i64,
    branch: ZBranch,
) -> Result<(f64, f64), SurfaceError> {
    if !(a > 0.0 && hbar > 0.0) {
        return Err(SurfaceError::DomainError("a and hbar must be positive".into()));
    }
    let q = invert_area_map(-hbar * n as f64, a);
    let ch = q.cosh();
    let sign = match branch {
        ZBranch::Plus => 1.0,
        ZBranch::Minus => -1.0,
    };
    Ok((a * a * ch * ch, sign * a * q))
}

/// Large-`|n|` behaviour `2 hbar |n| - (a^2/2) ln |n|`.
pub fn catenoid_asymptotic(a: f64, hbar: f64, n: i64) -> Result<f64, SurfaceError> {
    if n == 0 {
        return Err(SurfaceError::DomainError("n must be nonzero".into()));
    }
    let m = n.unsigned_abs() as f64;
    Ok(2.0 * hbar * m - 0.5 * a * a * m.ln())
}

/// Residual `2(z_n - z_{n-1})^2 - (r_{n+1} + r_{n-1} - 2 r_n)` of the
/// discretized continuum solution.
pub fn catenoid_continuum_residual(a: f64, hbar: f64, n: i64) -> Result<f64, SurfaceError> {
    let (rm, _) = catenoid_closed(a, hbar, n - 1)?;
    let (r0, z0) = catenoid_closed(a, hbar, n)?;
    let (rp, _) = catenoid_closed(a, hbar, n + 1)?;
    let zm = catenoid_closed(a, hbar, n - 1)?.1;
    let dz = z0 - zm;
    Ok(2.0 * dz * dz - (rp + rm - 2.0 * r0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;
    use num_traits::Zero;

    #[test]
    fn hand_evaluated_recursion() {
        let s = catenoid_build(1.0, 1.0, 2.0, 0.0, -3, 4).unwrap();
        assert_eq!(*s.r(2).unwrap(), 3.5);
        assert_eq!(*s.r(-1).unwrap(), 2.0);
        assert_eq!(*s.z(1).unwrap(), 0.5);
        assert_eq!(*s.z(-1).unwrap(), -1.0);
        s.check_shape().unwrap();
    }

    #[test]
    fn boundary_case_r1_equals_r0() {
        let s = catenoid_build(1.0, 1.0, 1.0, 0.0, -2, 3).unwrap();
        assert_eq!(*s.r(2).unwrap(), 3.0);
        assert!(s.r_values().windows(2).skip(3).all(|w| w[1] > w[0]));
        let cls = catenoid_classify(&s).unwrap();
        assert_eq!(cls.n0, 0);
        assert_eq!(cls.delta, 1.0);
    }

    #[test]
    fn rejects_bad_data() {
        assert_eq!(
            catenoid_build(0.0, 1.0, 1.0, 0.0, -1, 1),
            Err(SurfaceError::DegenerateConstant)
        );
        assert_eq!(
            catenoid_build(1.0, 1.0, 3.5, 0.0, -1, 1),
            Err(SurfaceError::HypothesisViolated)
        );
        assert_eq!(
            catenoid_build(1.0, 1.0, 0.5, 0.0, -1, 1),
            Err(SurfaceError::HypothesisViolated)
        );
        assert_eq!(
            catenoid_build(1.0, 1.0, 1.5, 0.0, 1, 3),
            Err(SurfaceError::InvalidRange)
        );
    }

    #[test]
    fn classification_and_shift_covariance() {
        let s = catenoid_build(1.0, 1.0, 2.0, 0.0, -10, 10).unwrap();
        let cls = catenoid_classify(&s).unwrap();
        assert_eq!(cls.n0, 0);
        assert!(cls.delta.abs() < 1e-15);
        assert!(!cls.boundary_warning);
        let moved = catenoid_classify(&s.shifted(5)).unwrap();
        assert_eq!(moved.n0, 5);
        assert_eq!(moved.delta, cls.delta);
    }

    #[test]
    fn negative_c_makes_z_decrease() {
        let s = catenoid_build(-0.5, 1.0, 1.2, 3.0, -6, 6).unwrap();
        s.check_shape().unwrap();
        assert!(s.z_values().windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn constant_sequence_is_rejected() {
        let s = CatenoidSolution {
            c: 1.0,
            z0: 0.0,
            n_min: -1,
            n_max: 1,
            r: vec![2.0; 3],
            z: vec![0.0, 1.0, 2.0],
        };
        assert_eq!(catenoid_classify(&s), Err(SurfaceError::ConstantSolution));
    }

    #[test]
    fn exact_residuals_vanish() {
        let s = catenoid_build_exact(
            ratio(1, 1),
            ratio(1, 1),
            ratio(2, 1),
            ratio(0, 1),
            -6,
            6,
            DEFAULT_EXACT_BIT_BUDGET,
        )
        .unwrap();
        for (_, a, b) in s.residuals() {
            assert!(a.is_zero() && b.is_zero());
        }
        assert_eq!(s.r(3).unwrap(), &ratio(253, 49));
    }

    #[test]
    fn exact_build_respects_budget() {
        let err = catenoid_build_exact(
            ratio(1, 1),
            ratio(1, 1),
            ratio(2, 1),
            ratio(0, 1),
            -40,
            40,
            4096,
        )
        .unwrap_err();
        assert!(matches!(err, SurfaceError::HeightBudgetExceeded { .. }));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(catenoid_closed(1.0, 0.1, 0).unwrap(), (1.0, 0.0));
        let (r, _) = catenoid_closed(1.0, 0.1, -1).unwrap();
        assert!((r - 1.009_967).abs() < 1e-6, "{r}");
        let (ra, za) = catenoid_closed(2.0, 0.3, 7).unwrap();
        let (rb, zb) = catenoid_closed(2.0, 0.3, -7).unwrap();
        assert_eq!(ra, rb);
        assert_eq!(za, -zb);
        let (_, zm) = catenoid_closed_branch(2.0, 0.3, 7, ZBranch::Minus).unwrap();
        assert_eq!(zm, -za);
    }

    #[test]
    fn inversion_round_trips() {
        for &p in &[1e-8, 0.1, 1.0, 37.5, 1e5] {
            for &a in &[0.5, 1.0, 3.0] {
                let q = invert_area_map(p, a);
                let back = 0.5 * a * a * (q + 0.5 * (2.0 * q).sinh());
                assert!((back - p).abs() <= 1e-14 * p.max(1.0), "p={p} a={a}");
                assert_eq!(invert_area_map(-p, a), -q);
            }
        }
    }

    #[test]
    fn asymptotic_form() {
        assert!((catenoid_asymptotic(1.0, 1.0, 100).unwrap() - (200.0 - 0.5 * 100f64.ln())).abs() < 1e-12);
        assert_eq!(
            catenoid_asymptotic(1.0, 1.0, 100).unwrap(),
            catenoid_asymptotic(1.0, 1.0, -100).unwrap()
        );
        assert_eq!(catenoid_asymptotic(0.0, 1.0, 10).unwrap(), 20.0);
        assert!(catenoid_asymptotic(1.0, 1.0, 0).is_err());
    }
}
