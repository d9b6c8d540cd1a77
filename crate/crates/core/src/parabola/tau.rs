use super::ParabolaError;
use crate::exactmath::{poly_exact_div, MathError, Poly, RatFn, Rational};
use num_traits::Zero;

/// Exact u-polynomials and tau-functions of the parabola recursion as
/// polynomials in the initial value `x`, for a fixed rational `eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauTable {
    pub eps: Rational,
    /// `u_0, u_1, ...`; `u_k = 1` for `k < 0`.
    u: Vec<Poly>,
    /// `tau_{-2}, tau_{-1}, tau_0, tau_1, ...` with `tau_{-2} = 0`.
    tau: Vec<Poly>,
}

impl TauTable {
    pub fn u(&self, n: i64) -> Option<Poly> {
        if n < 0 {
            Some(Poly::one())
        } else {
            self.u.get(n as usize).cloned()
        }
    }

    pub fn u_polys(&self) -> &[Poly] {
        &self.u
    }

    pub fn tau(&self, n: i64) -> Option<&Poly> {
        usize::try_from(n + 2).ok().and_then(|i| self.tau.get(i))
    }

    /// Largest `n` with `tau_n` available.
    pub fn max_tau_index(&self) -> i64 {
        self.tau.len() as i64 - 3
    }

    /// Copy with `tau_n` replaced by `tau_n + delta`.
    pub fn perturbed(&self, n: i64, delta: &Rational) -> Self {
        let mut out = self.clone();
        let i = (n + 2) as usize;
        out.tau[i] = &out.tau[i] + &Poly::constant(delta.clone());
        out
    }
}

/// `v_0, ..., v_{n_max}` as reduced rational functions of `x`.
fn v_ratfns(eps: &Rational, n_max: usize) -> Result<Vec<RatFn>, MathError> {
    let one = RatFn::constant(Rational::from_integer(1.into()));
    let mut v = vec![RatFn::from_poly(Poly::x())];
    let mut prev = RatFn::zero();
    for n in 0..n_max {
        let lead = RatFn::constant(eps * Rational::from_integer((n as i64 + 1).into()));
        let next = &(&lead.try_div(&v[n])? - &prev) - &one;
        prev = v[n].clone();
        v.push(next);
    }
    Ok(v)
}

/// Extracts `u_n = v_n u_{n-1} u_{n-3} / u_{n-4}` for `n = 0..=n_max` by exact
/// division, failing if any `u_n` is not a polynomial.
pub fn u_exact(eps: &Rational, n_max: usize) -> Result<Vec<Poly>, ParabolaError> {
    check_eps(eps)?;
    let v = v_ratfns(eps, n_max)?;
    Ok(u_from_v(&v)?)
}

fn u_from_v(v: &[RatFn]) -> Result<Vec<Poly>, MathError> {
    let mut u: Vec<Poly> = Vec::with_capacity(v.len());
    let at = |u: &Vec<Poly>, k: isize| {
        if k < 0 {
            Poly::one()
        } else {
            u[k as usize].clone()
        }
    };
    for (n, vn) in v.iter().enumerate() {
        let k = n as isize;
        let num = vn.num() * &(at(&u, k - 1) * at(&u, k - 3));
        let den = vn.den() * &at(&u, k - 4);
        u.push(poly_exact_div(&num, &den)?);
    }
    Ok(u)
}

fn check_eps(eps: &Rational) -> Result<(), ParabolaError> {
    if *eps > Rational::zero() {
        Ok(())
    } else {
        Err(ParabolaError::NonPositiveEps)
    }
}

/// Builds `tau_{-1} = tau_0 = 1`, `tau_1 = x`,
/// `tau_{n+1} = v_n tau_n^2 / tau_{n-1}` through `tau_{n_max}` and checks
/// `tau_n = u_{n-1} u_{n-2} u_{n-3}` for each `n`.
pub fn tau_table(eps: &Rational, n_max: usize) -> Result<TauTable, ParabolaError> {
    check_eps(eps)?;
    let n_max = n_max.max(1);
    let v = v_ratfns(eps, n_max)?;
    let u = u_from_v(&v)?;
    let mut tau = vec![Poly::zero(), Poly::one(), Poly::one(), Poly::x()];
    for n in 1..n_max {
        let t_n = &tau[n + 2];
        let t_prev = &tau[n + 1];
        let num = v[n].num() * &(t_n * t_n);
        let den = v[n].den() * t_prev;
        tau.push(poly_exact_div(&num, &den)?);
    }
    let table = TauTable {
        eps: eps.clone(),
        u,
        tau,
    };
    for n in 0..=n_max as i64 {
        let product = table.u(n - 1).unwrap() * table.u(n - 2).unwrap() * table.u(n - 3).unwrap();
        if &product != table.tau(n).unwrap() {
            return Err(ParabolaError::Factorization { n: n as usize });
        }
    }
    Ok(table)
}

/// Residuals of the two tau-function forms of the recursion at index `n >= 1`,
/// the five-term diagonal relation and the three-term relation:
///
/// ```text
/// tau_{n+2} tau_n tau_{n-1}^3 tau_{n-2} + tau_{n+1}^2 tau_{n-1}^3 tau_{n-2}
///     - tau_{n+1} tau_n^3 (tau_{n-2}^2 + tau_{n-1} tau_{n-3})
///     - eps tau_{n+1} tau_n^2 tau_{n-1}^2 tau_{n-2}
///
/// tau_{n+2} tau_n tau_{n-1}^2 + tau_{n+1}^2 (tau_{n-1}^2 + tau_n tau_{n-2})
///     - eps (n+1) tau_{n+1} tau_n^2 tau_{n-1}
/// ```
///
/// Both vanish identically; `tau_{-2} = 0` supplies the vacuum value at `n = 1`.
pub fn conserved_residual(table: &TauTable, n: i64) -> Result<(Poly, Poly), ParabolaError> {
    if n < 1 || n + 2 > table.max_tau_index() {
        return Err(ParabolaError::OutOfRange { n });
    }
    let t = |k: i64| table.tau(k).expect("index checked");
    let (p2, p1, t0, m1, m2, m3) = (t(n + 2), t(n + 1), t(n), t(n - 1), t(n - 2), t(n - 3));
    let eps = Poly::constant(table.eps.clone());
    let m1_2 = m1 * m1;
    let m1_3 = &m1_2 * m1;
    let t0_2 = t0 * t0;
    let p1_2 = p1 * p1;

    let a_lhs = p2 * t0 * &m1_3 * m2.clone() + &p1_2 * &m1_3 * m2.clone()
        - p1 * &(&t0_2 * t0) * &(m2 * m2 + m1 * m3);
    let a_rhs = &eps * p1 * &t0_2 * &m1_2 * m2.clone();

    let b_lhs = p2 * t0 * &m1_2 + &p1_2 * &(&m1_2 + &(t0 * m2));
    let scale = Poly::constant(&table.eps * Rational::from_integer((n + 1).into()));
    let b_rhs = &scale * p1 * &t0_2 * m1.clone();
    Ok((a_lhs - a_rhs, b_lhs - b_rhs))
}
