use rayon::prelude::*;

use super::ParabolaError;

/// Orbit of the diagonal constraint for `Z1 = W^p`, `Z2 = W^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialOrbit {
    pub p: usize,
    pub q: usize,
    pub eps: f64,
    pub v: Vec<f64>,
    pub first_failure: Option<usize>,
}

impl MonomialOrbit {
    pub fn survived_steps(&self) -> usize {
        self.first_failure.unwrap_or(self.v.len())
    }
}

/// `prod_{k=from}^{from+len-1} v_k` with `v_k = 0` for `k < 0`.
fn window(v: &[f64], from: isize, len: usize) -> f64 {
    (from..from + len as isize)
        .map(|k| if k < 0 { 0.0 } else { v[k as usize] })
        .product()
}

/// Iterates
/// `P_p(n) - P_p(n-p) + P_q(n) - P_q(n-q) = eps`, `P_m(n) = prod_{k=n}^{n+m-1} v_k`,
/// solved for `v_{n+q-1}` at `n = 0, 1, ...` from the seeds `v_0..v_{q-2}`
/// until index `n_max` or the first nonpositive value.
pub fn monomial_pair_iterate(
    p: usize,
    q: usize,
    eps: f64,
    seeds: &[f64],
    n_max: usize,
) -> Result<MonomialOrbit, ParabolaError> {
    if p < 1 || q <= p {
        return Err(ParabolaError::InvalidArgument(format!(
            "need 1 <= p < q, got p={p}, q={q}"
        )));
    }
    if !(eps > 0.0) {
        return Err(ParabolaError::NonPositiveEps);
    }
    if seeds.len() != q - 1 || seeds.iter().any(|s| !(*s > 0.0)) {
        return Err(ParabolaError::InvalidArgument(format!(
            "need {} positive seeds",
            q - 1
        )));
    }
    let mut v = seeds.to_vec();
    let mut first_failure = None;
    let mut n = 0usize;
    while v.len() <= n_max {
        let ni = n as isize;
        let pivot = window(&v, ni, q - 1);
        if pivot == 0.0 {
            return Err(ParabolaError::ZeroProductPivot { n });
        }
        let rest = eps - window(&v, ni, p) + window(&v, ni - p as isize, p)
            + window(&v, ni - q as isize, q);
        let next = rest / pivot;
        v.push(next);
        if !(next > 0.0) {
            first_failure = Some(v.len() - 1);
            break;
        }
        n += 1;
    }
    Ok(MonomialOrbit {
        p,
        q,
        eps,
        v,
        first_failure,
    })
}

/// Outcome of the seed search.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedSearch {
    pub seeds: Vec<f64>,
    pub orbit: MonomialOrbit,
    pub evaluations: usize,
}

/// Longer lifetime wins; among equal lifetimes, the orbit whose failing
/// value lands closest to zero is nearer to surviving one more step.
fn score(orbit: &MonomialOrbit) -> (usize, f64) {
    let last = match orbit.first_failure {
        Some(k) => orbit.v[k],
        None => 0.0,
    };
    (orbit.survived_steps(), if last.is_nan() { f64::NEG_INFINITY } else { last })
}

fn beats(a: &MonomialOrbit, b: &MonomialOrbit) -> bool {
    let (la, va) = score(a);
    let (lb, vb) = score(b);
    la > lb || (la == lb && va > vb)
}

/// Zoomed grid search over the `q - 1` seeds for the longest-lived orbit.
///
/// Each level evaluates a `grid^(q-1)` lattice of cell centres in the current
/// box (initially `bounds`, one `(lo, hi)` pair per seed) and recentres a box
/// of four cells per axis on the best point. Long-lived seeds lie on a thin
/// set, so the search needs several levels; for `p = 1, q = 3` note that
/// `v_0 < eps` is forced by the first constraint.
pub fn monomial_pair_search(
    p: usize,
    q: usize,
    eps: f64,
    bounds: &[(f64, f64)],
    grid: usize,
    levels: usize,
    n_max: usize,
) -> Result<SeedSearch, ParabolaError> {
    if grid < 2 || levels == 0 {
        return Err(ParabolaError::InvalidArgument(
            "need grid >= 2 and levels >= 1".into(),
        ));
    }
    let dims = q.saturating_sub(1);
    if bounds.len() != dims || bounds.iter().any(|(a, b)| !(*a >= 0.0 && b > a)) {
        return Err(ParabolaError::InvalidArgument(format!(
            "need {dims} seed ranges 0 <= lo < hi"
        )));
    }
    let zoom = 2.0;
    let (mut lo, mut hi): (Vec<f64>, Vec<f64>) = bounds.iter().copied().unzip();
    let mut best: Option<(Vec<f64>, MonomialOrbit)> = None;
    let mut evaluations = 0;
    for _ in 0..levels {
        let points: Vec<Vec<f64>> = (0..grid.pow(dims as u32))
            .map(|mut idx| {
                (0..dims)
                    .map(|d| {
                        let i = idx % grid;
                        idx /= grid;
                        lo[d] + (i as f64 + 0.5) * (hi[d] - lo[d]) / grid as f64
                    })
                    .collect()
            })
            .collect();
        evaluations += points.len();
        let level_best = points
            .into_par_iter()
            .filter_map(|seeds| {
                monomial_pair_iterate(p, q, eps, &seeds, n_max)
                    .ok()
                    .map(|orbit| (seeds, orbit))
            })
            // Deterministic regardless of scheduling: ties keep the earlier point.
            .reduce_with(|a, b| if beats(&b.1, &a.1) { b } else { a });
        let Some((seeds, orbit)) = level_best else {
            break;
        };
        for d in 0..dims {
            let half = zoom * (hi[d] - lo[d]) / grid as f64;
            lo[d] = (seeds[d] - half).max(0.0);
            hi[d] = seeds[d] + half;
        }
        if best.as_ref().is_none_or(|(_, b)| beats(&orbit, b)) {
            best = Some((seeds, orbit));
        }
    }
    let (seeds, orbit) =
        best.ok_or_else(|| ParabolaError::InvalidArgument("no admissible seeds".into()))?;
    Ok(SeedSearch {
        seeds,
        orbit,
        evaluations,
    })
}
