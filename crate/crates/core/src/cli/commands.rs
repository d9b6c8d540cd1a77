use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::{json, Value};

use super::args::*;
use super::table::{complex, num, ResultTable};
use super::CliError;
use crate::exactmath::{poly_exact_div, ratfn_reduce, Poly, Rational};
use crate::operators::{
    embed_catenoid, embed_enneper, embed_hyperbola, embed_parabola, hym_residual,
    moment, schild_matrix, wz_residual, ym_residual, DenseMatrix, ShiftOperator,
};
use crate::parabola::{
    closed_form_v, conserved_residual, interval_endpoints, monomial_pair_iterate,
    monomial_pair_search, tau_table, u_exact, v_iterate, vhat_bisect, vhat_bisect_extended,
    vhat_series, ParabolaError,
};
use crate::scalar::{BigReal, Scalar};
use crate::surfaces::{
    catenoid_asymptotic, catenoid_build, catenoid_build_exact, catenoid_classify,
    catenoid_closed_branch, catenoid_continuum_residual, enneper_sigma, enneper_sigma_closed,
    helicoid_profile, helicoid_residual, hyperbola_r, hyperbola_residual, Branch, HyperbolaParams,
    ZBranch,
};
use crate::torusdegree::{
    clock_shift, fuzzy_sphere, sphere_degree, torus_degree, torus_eom_residual, unitary_schild,
};

const TORUS_CONVENTION: &str =
    "Phi_1 e_k = e_(k-1) (cyclic), Phi_2 = diag(omega^k), omega = exp(2 pi i/N); Psi = Phi_1 Phi_2 Phi_1^-1 Phi_2^-1 = omega I, degree +1";
const GAUGE_CONVENTION: &str = "shift weights real nonnegative (w_n = sqrt(r_n), lambda_n = sqrt(sigma_n))";

/// Working precision requested through `QMS_PRECISION`, in bits.
pub fn precision_bits() -> Result<Option<usize>, CliError> {
    match std::env::var("QMS_PRECISION") {
        Err(_) => Ok(None),
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(b) if b >= 53 => Ok(Some(b)),
            _ => Err(CliError::Usage(format!(
                "QMS_PRECISION must be an integer number of bits >= 53, got `{s}`"
            ))),
        },
    }
}

fn exact(arg: &NumArg, name: &str) -> Result<Rational, CliError> {
    arg.exact.clone().ok_or_else(|| {
        CliError::Usage(format!(
            "--{name} `{}` is not exact; give an integer or a fraction p/q",
            arg.text
        ))
    })
}

fn positive(arg: &NumArg, name: &str) -> Result<f64, CliError> {
    if arg.value > 0.0 {
        Ok(arg.value)
    } else {
        Err(CliError::Usage(format!("--{name} must be positive")))
    }
}

fn poly_of(coeffs: &[NumArg], name: &str) -> Result<Poly, CliError> {
    coeffs
        .iter()
        .map(|c| exact(c, name))
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}

/// Coefficients as strings, highest degree first.
fn coeff_cells(p: &Poly) -> Vec<Value> {
    if p.is_zero() {
        return vec![json!("0")];
    }
    p.coeffs().iter().rev().map(|c| json!(c.to_string())).collect()
}

fn branch(b: BranchArg) -> Branch {
    match b {
        BranchArg::Plus => Branch::Plus,
        BranchArg::Minus => Branch::Minus,
    }
}

pub fn execute(cli: &Cli, config: Value) -> Result<ResultTable, CliError> {
    match &cli.module {
        Module::Exactmath(op) => exactmath(op, config),
        Module::Surfaces(op) => surfaces(op, cli.mode, config),
        Module::Parabola(op) => parabola(op, cli.mode, config),
        Module::Operators(op) => operators(op, cli.seed, config),
        Module::Torus(op) => torus(op, config),
    }
}

fn exactmath(op: &ExactOp, config: Value) -> Result<ResultTable, CliError> {
    match op {
        ExactOp::PolyDiv { a, b } => {
            let (pa, pb) = (poly_of(a, "a")?, poly_of(b, "b")?);
            if pb.is_zero() {
                return Err(CliError::Usage("--b must be a nonzero polynomial".into()));
            }
            let q = poly_exact_div(&pa, &pb)?;
            let mut t = ResultTable::new("exactmath poly-div", config).columns(&["poly", "coefficients_high_to_low"]);
            t.set("quotient", q.to_string());
            t.set("degree", q.degree());
            let mut row = vec![json!("quotient")];
            row.extend(coeff_cells(&q));
            t.row(row);
            Ok(t)
        }
        ExactOp::Reduce { num: n, den } => {
            let (pn, pd) = (poly_of(n, "num")?, poly_of(den, "den")?);
            if pd.is_zero() {
                return Err(CliError::Usage("--den must be a nonzero polynomial".into()));
            }
            let r = ratfn_reduce(pn, pd)?;
            let mut t = ResultTable::new("exactmath reduce", config).columns(&["poly", "coefficients_high_to_low"]);
            t.set("reduced", r.to_string());
            for (name, p) in [("num", r.num()), ("den", r.den())] {
                let mut row = vec![json!(name)];
                row.extend(coeff_cells(p));
                t.row(row);
            }
            Ok(t)
        }
    }
}

fn surfaces(op: &SurfaceOp, mode: Mode, config: Value) -> Result<ResultTable, CliError> {
    match op {
        SurfaceOp::Catenoid(a) => {
            let mut t = ResultTable::new("surfaces catenoid", config);
            match mode {
                Mode::Float => {
                    let sol = catenoid_build(a.c.value, a.r0.value, a.r1.value, a.z0.value, a.n_min, a.n_max)?;
                    t = t.columns(&["n", "r", "z"]);
                    for (i, n) in sol.indices().enumerate() {
                        t.row(vec![json!(n), num(sol.r_values()[i]), num(sol.z_values()[i])]);
                    }
                    let res = sol.residuals();
                    t.set("max_residual_second_difference", res.iter().map(|r| r.1.abs()).fold(0.0, f64::max));
                    t.set("max_residual_area", res.iter().map(|r| r.2.abs()).fold(0.0, f64::max));
                    t.set("classification", catenoid_classify(&sol)?);
                }
                Mode::Exact => {
                    let sol = catenoid_build_exact(
                        exact(&a.c, "c")?,
                        exact(&a.r0, "r0")?,
                        exact(&a.r1, "r1")?,
                        exact(&a.z0, "z0")?,
                        a.n_min,
                        a.n_max,
                        a.bit_budget,
                    )?;
                    t = t.columns(&["n", "r", "z", "r_float", "z_float"]);
                    for (i, n) in sol.indices().enumerate() {
                        let (r, z) = (&sol.r_values()[i], &sol.z_values()[i]);
                        t.row(vec![json!(n), json!(r.to_string()), json!(z.to_string()), num(r.to_f64()), num(z.to_f64())]);
                    }
                    let zero = sol.residuals().iter().all(|(_, a, b)| a.is_zero() && b.is_zero());
                    t.set("residuals_identically_zero", zero);
                    t.set("classification", catenoid_classify(&sol)?);
                }
            }
            Ok(t)
        }
        SurfaceOp::CatenoidClosed { a, hbar, n_min, n_max, branch } => {
            let (a, h) = (positive(a, "a")?, positive(hbar, "hbar")?);
            let zb = match branch {
                BranchArg::Plus => ZBranch::Plus,
                BranchArg::Minus => ZBranch::Minus,
            };
            let mut t = ResultTable::new("surfaces catenoid-closed", config).columns(&["n", "r", "z", "asymptotic"]);
            t.convention("z offset 0; q odd in p = -hbar n");
            for n in *n_min..=*n_max {
                let (r, z) = catenoid_closed_branch(a, h, n, zb)?;
                let asym = if n == 0 { Value::Null } else { num(catenoid_asymptotic(a, h, n)?) };
                t.row(vec![json!(n), num(r), num(z), asym]);
            }
            Ok(t)
        }
        SurfaceOp::CatenoidOrder { a, p, hbar, halvings } => {
            let (a, h0) = (positive(a, "a")?, positive(hbar, "hbar")?);
            let mut t = ResultTable::new("surfaces catenoid-order", config).columns(&["hbar", "n", "residual", "order"]);
            t.convention("hbar is adjusted to p/n with n = round(p/hbar) so that n*hbar = p exactly");
            let mut prev: Option<f64> = None;
            let mut orders = Vec::new();
            for k in 0..=*halvings {
                let n = (p.value / (h0 / 2f64.powi(k as i32))).round() as i64;
                if n == 0 {
                    return Err(CliError::Usage("--p / --hbar must be at least 1".into()));
                }
                let h = p.value / n as f64;
                let res = catenoid_continuum_residual(a, h, n)?;
                let order = prev.map(|r| (r / res).abs().log2());
                if let Some(o) = order {
                    orders.push(o);
                }
                t.row(vec![num(h), json!(n), num(res), order.map_or(Value::Null, num)]);
                prev = Some(res);
            }
            t.set("orders", orders);
            Ok(t)
        }
        SurfaceOp::Enneper { hbar, c, n_max } => {
            let h = positive(hbar, "hbar")?;
            let seq = enneper_sigma(h, *n_max)?;
            let mut t = ResultTable::new("surfaces enneper", config).columns(&["n", "sigma", "closed_form"]);
            for (n, s) in seq.sigma.iter().enumerate() {
                let closed = enneper_sigma_closed(h, c.value, n as u64).map_or(Value::Null, num);
                t.row(vec![json!(n), num(*s), closed]);
            }
            t.set("strictly_increasing", seq.is_strictly_increasing());
            if seq.sigma.len() > 1 {
                t.set("sigma1_over_2hbar", seq.sigma[1] / (2.0 * h));
            }
            Ok(t)
        }
        SurfaceOp::Helicoid { hbar, x_min, x_max, steps } => {
            let h = positive(hbar, "hbar")?;
            if *steps == 0 || x_max.value < x_min.value {
                return Err(CliError::Usage("need --steps >= 1 and --x-max >= --x-min".into()));
            }
            let mut t = ResultTable::new("surfaces helicoid", config).columns(&["x", "w", "residual"]);
            t.convention("real profile w = sinh v; phase carried by the shift structure");
            for i in 0..=*steps {
                let x = x_min.value + (x_max.value - x_min.value) * i as f64 / *steps as f64;
                t.row(vec![num(x), num(helicoid_profile(x)), num(helicoid_residual(x, h))]);
            }
            Ok(t)
        }
        SurfaceOp::Hyperbola { eps, delta, c, n_min, n_max, branch: b } => {
            let p = HyperbolaParams::new(eps.value, delta.value, c.value)?.with_branch(branch(*b));
            let mut t = ResultTable::new("surfaces hyperbola", config).columns(&["n", "r", "residual"]);
            let mut worst: f64 = 0.0;
            for n in *n_min..=*n_max {
                let r = hyperbola_r(&p, n)?;
                let res = hyperbola_residual(&p, n)?;
                worst = worst.max(res.abs());
                t.row(vec![json!(n), num(r), num(res)]);
            }
            t.set("max_abs_residual", worst);
            Ok(t)
        }
    }
}

fn parabola(op: &ParabolaOp, mode: Mode, config: Value) -> Result<ResultTable, CliError> {
    match op {
        ParabolaOp::Iterate { eps, x, n_max } => {
            let mut t = ResultTable::new("parabola iterate", config).columns(&["n", "v"]);
            let first_failure = match (mode, precision_bits()?) {
                (Mode::Exact, _) => {
                    let o = v_iterate(exact(eps, "eps")?, exact(x, "x")?, *n_max)?;
                    for (n, v) in o.v.iter().enumerate() {
                        t.row(vec![json!(n), json!(v.to_string())]);
                    }
                    o.first_failure
                }
                (Mode::Float, Some(bits)) => {
                    let o = v_iterate(BigReal::from_f64(eps.value, bits), BigReal::from_f64(x.value, bits), *n_max)?;
                    for (n, v) in o.v.iter().enumerate() {
                        t.row(vec![json!(n), json!(v.to_decimal(bits * 3 / 10))]);
                    }
                    t.set("precision_bits", bits);
                    o.first_failure
                }
                (Mode::Float, None) => {
                    let o = v_iterate(eps.value, x.value, *n_max)?;
                    for (n, v) in o.v.iter().enumerate() {
                        t.row(vec![json!(n), num(*v)]);
                    }
                    o.first_failure
                }
            };
            t.set("first_failure", first_failure);
            Ok(t)
        }
        ParabolaOp::Shoot { eps, tol, n_max } => {
            let e = positive(eps, "eps")?;
            let mut t = ResultTable::new("parabola shoot", config).columns(&["n", "v"]);
            t.set("series", vhat_series(e));
            match precision_bits()? {
                None => {
                    let s = vhat_bisect(e, positive(tol, "tol")?, *n_max)?;
                    t.set("vhat", s.vhat);
                    t.set("bracket", [s.lo, s.hi]);
                    t.set("survived_steps", s.survived_steps);
                    t.set("iterations", s.iterations);
                    t.set("resolution_limited", s.resolution_limited);
                    t.set("precision_bits", 53);
                    let o = v_iterate(e, s.vhat, *n_max)?;
                    for (n, v) in o.v.iter().enumerate().take(s.survived_steps) {
                        t.row(vec![json!(n), num(*v)]);
                    }
                }
                Some(bits) => {
                    let s = vhat_bisect_extended(e, bits, *n_max)?;
                    let digits = bits * 3 / 10;
                    t.set("vhat", s.vhat.to_f64());
                    t.set("vhat_decimal", s.vhat.to_decimal(digits));
                    t.set("bracket", [s.lo.to_decimal(digits), s.hi.to_decimal(digits)]);
                    t.set("survived_steps", s.survived_steps);
                    t.set("iterations", s.iterations);
                    t.set("resolution_limited", s.resolution_limited);
                    t.set("precision_bits", bits);
                    let o = v_iterate(s.eps.clone(), s.vhat.clone(), *n_max)?;
                    for (n, v) in o.v.iter().enumerate().take(s.survived_steps) {
                        t.row(vec![json!(n), num(v.to_f64())]);
                    }
                }
            }
            Ok(t)
        }
        ParabolaOp::Series { eps } => {
            let mut t = ResultTable::new("parabola series", config);
            t.set("series", vhat_series(eps.value));
            Ok(t)
        }
        ParabolaOp::Closed { hbar, c, n_min, n_max } => {
            let mut t = ResultTable::new("parabola closed", config).columns(&["n", "v"]);
            for n in *n_min..=*n_max {
                t.row(vec![json!(n), num(closed_form_v(n, hbar.value, c.value)?)]);
            }
            Ok(t)
        }
        ParabolaOp::Endpoints { eps, n_max } => {
            let e = positive(eps, "eps")?;
            let (c, exhausted) = match interval_endpoints(e, *n_max) {
                Ok(c) => (c, false),
                Err(ParabolaError::PrecisionExhausted { endpoints, .. }) => (endpoints, true),
                Err(err) => return Err(err.into()),
            };
            let mut t = ResultTable::new("parabola endpoints", config).columns(&["n", "c"]);
            for (n, x) in c.iter().enumerate() {
                t.row(vec![json!(n), num(*x)]);
            }
            t.set("reached", c.len() - 1);
            t.set("precision_exhausted", exhausted);
            Ok(t)
        }
        ParabolaOp::Upoly { eps, n } => {
            let u = u_exact(&exact(eps, "eps")?, *n)?;
            let mut t = ResultTable::new("parabola upoly", config).columns(&["poly", "coefficients_high_to_low"]);
            t.convention("polynomials in x = v_0; coefficients listed from the highest degree down");
            for (k, p) in u.iter().enumerate() {
                let mut row = vec![json!(format!("u{k}"))];
                row.extend(coeff_cells(p));
                t.row(row);
            }
            t.set("degrees", u.iter().map(Poly::degree).collect::<Vec<_>>());
            Ok(t)
        }
        ParabolaOp::Tau { eps, n } => {
            let table = tau_table(&exact(eps, "eps")?, *n)?;
            let mut t = ResultTable::new("parabola tau", config).columns(&["poly", "coefficients_high_to_low"]);
            t.convention("tau_-1 = tau_0 = 1, tau_1 = x; coefficients listed from the highest degree down");
            for k in 0..=*n as i64 {
                let mut row = vec![json!(format!("tau{k}"))];
                row.extend(coeff_cells(table.tau(k).expect("table covers n")));
                t.row(row);
            }
            t.set("factorization_verified", true);
            Ok(t)
        }
        ParabolaOp::Conserved { eps, n } => {
            let table = tau_table(&exact(eps, "eps")?, n + 2)?;
            let mut t = ResultTable::new("parabola conserved", config).columns(&["n", "five_term_zero", "three_term_zero"]);
            t.convention("tau_-2 = 0 (vacuum)");
            let mut all = true;
            for k in 1..=*n as i64 {
                let (a, b) = conserved_residual(&table, k)?;
                all &= a.is_zero() && b.is_zero();
                t.row(vec![json!(k), json!(a.is_zero()), json!(b.is_zero())]);
            }
            if !all {
                return Err(CliError::Contract("a conserved tau identity failed".into()));
            }
            t.set("all_zero", all);
            Ok(t)
        }
        ParabolaOp::Monomial { p, q, eps, seeds, grid, levels, n_max } => {
            let e = positive(eps, "eps")?;
            let mut t = ResultTable::new("parabola monomial", config).columns(&["n", "v"]);
            let orbit = match seeds {
                Some(s) => {
                    let s: Vec<f64> = s.iter().map(|x| x.value).collect();
                    monomial_pair_iterate(*p, *q, e, &s, *n_max)?
                }
                None => {
                    let mut bounds = vec![(0.0, 1.0); q.saturating_sub(1)];
                    if let Some(first) = bounds.first_mut() {
                        first.1 = e.min(1.0);
                    }
                    let found = monomial_pair_search(*p, *q, e, &bounds, *grid, *levels, *n_max)?;
                    t.set("seeds", &found.seeds);
                    t.set("evaluations", found.evaluations);
                    found.orbit
                }
            };
            for (n, v) in orbit.v.iter().enumerate() {
                t.row(vec![json!(n), num(*v)]);
            }
            t.set("survived_steps", orbit.survived_steps());
            t.set("first_failure", orbit.first_failure);
            Ok(t)
        }
    }
}

fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> DenseMatrix {
    let mut normal = || -> f64 { rng.sample(StandardNormal) };
    let m = nalgebra::DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(), normal()));
    DenseMatrix::from_matrix(m.qr().q())
}

fn operators(op: &OperatorOp, seed: u64, config: Value) -> Result<ResultTable, CliError> {
    match op {
        OperatorOp::Residual { model, n, margin, param } => {
            let mut t = ResultTable::new("operators residual", config).columns(&["residual", "interior_max_abs", "spectral_norm"]);
            t.convention(GAUGE_CONVENTION);
            let p = param.as_ref().map(|x| x.value);
            let (names, report): (Vec<&str>, _) = match model {
                Model::Catenoid => {
                    let half = (*n as i64) / 2;
                    let sol = catenoid_build(1.0, 1.0, 2.0, 0.0, -half, *n as i64 - half)?;
                    let (w, z) = embed_catenoid(&sol, *n)?;
                    (vec!["Delta(W)", "Delta(Z)"], wz_residual(&w, &z, *margin)?)
                }
                Model::Enneper => {
                    let h = p.unwrap_or(0.1);
                    if !(h > 0.0) {
                        return Err(CliError::Usage("--param (hbar) must be positive".into()));
                    }
                    let (w, z) = embed_enneper(&enneper_sigma(h, *n)?, *n)?;
                    (vec!["Delta(W)", "Delta(X3)"], wz_residual(&w, &z, *margin)?)
                }
                Model::Hyperbola => {
                    let e = p.unwrap_or(1.0);
                    let params = HyperbolaParams::new(e, 0.0, 1.0)?;
                    let (z1, z2) = embed_hyperbola(&params, -(*n as i64) / 2, *n)?;
                    let r = hym_residual(&z1, &z2, e, *margin)?;
                    t.set("commutator_interior_max_abs", r.commutator.interior_norm);
                    (vec!["HYM"], r.residual)
                }
                Model::Parabola => {
                    let e = p.unwrap_or(1.0);
                    if !(e > 0.0) {
                        return Err(CliError::Usage("--param (eps) must be positive".into()));
                    }
                    let s = vhat_bisect(e, 1e-15, 400)?;
                    let o = v_iterate(e, s.vhat, *n)?;
                    if o.survived_steps() + 1 < *n {
                        return Err(CliError::Usage(format!(
                            "the double-precision orbit stays positive for {} steps; use --N <= {}",
                            o.survived_steps(),
                            o.survived_steps() + 1
                        )));
                    }
                    let (z1, z2) = embed_parabola(&o.v, *n)?;
                    let mut r = hym_residual(&z1, &z2, e, 0)?.residual;
                    // The vacuum edge is exact; only the top rows are truncated.
                    let band = r.residuals[0].band_max_abs(0, n.saturating_sub(*margin));
                    r.interior_norms[0] = band;
                    r.interior_norm = band;
                    t.set("vhat", s.vhat);
                    t.convention("parabola: margin trims only the truncated top edge");
                    (vec!["HYM"], r)
                }
                Model::Sphere => {
                    let xs = fuzzy_sphere(*n)?;
                    (vec!["R1", "R2", "R3"], ym_residual(&xs, *margin)?)
                }
            };
            for (i, name) in names.iter().enumerate() {
                t.row(vec![json!(name), num(report.interior_norms[i]), num(report.spectral_norms[i])]);
            }
            t.set("interior_norm", report.interior_norm);
            t.set("margin", *margin);
            Ok(t)
        }
        OperatorOp::Schild { n } => {
            let xs = fuzzy_sphere(*n)?;
            let mut t = ResultTable::new("operators schild", config);
            t.set("schild_action", schild_matrix(&xs)?);
            Ok(t)
        }
        OperatorOp::Moment { eps, n } => {
            let e_exact = exact(eps, "eps")?;
            let e = positive(eps, "eps")?;
            let s = vhat_bisect(e, 1e-15, 400)?;
            let o = v_iterate(e, s.vhat, *n + 1)?;
            let dim = n + 2;
            if o.survived_steps() < dim - 1 {
                return Err(CliError::Usage("orbit too short for the requested moments".into()));
            }
            let w: Vec<f64> = o.v[..dim - 1].iter().map(|v| v.sqrt()).collect();
            let op = ShiftOperator::from_real(&w, dim, 1)?;
            let table = tau_table(&e_exact, (*n).max(1))?;
            let mut t = ResultTable::new("operators moment", config).columns(&["n", "moment", "tau_at_vhat"]);
            t.set("vhat", s.vhat);
            let mut worst: f64 = 0.0;
            for k in 1..=*n {
                let m = moment(&op, k)?;
                let tau = table.tau(k as i64).expect("table covers n").eval_f64(s.vhat);
                worst = worst.max((m - tau).abs());
                t.row(vec![json!(k), num(m), num(tau)]);
            }
            t.set("max_abs_difference", worst);
            Ok(t)
        }
        OperatorOp::Equivariance { n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let xs = fuzzy_sphere(*n)?;
            let u = random_unitary(*n, &mut rng);
            let ud = u.adjoint();
            let conj: Vec<DenseMatrix> = xs.iter().map(|x| &(&u * x) * &ud).collect();
            let a = ym_residual(&xs, 0)?;
            let b = ym_residual(&conj, 0)?;
            let worst = a
                .residuals
                .iter()
                .zip(&b.residuals)
                .map(|(ra, rb)| (&(&(&u * ra) * &ud) - rb).max_abs())
                .fold(0.0, f64::max);
            let mut t = ResultTable::new("operators equivariance", config);
            t.set("max_abs_deviation", worst);
            t.set("seed", seed);
            Ok(t)
        }
    }
}

fn torus(op: &TorusOp, config: Value) -> Result<ResultTable, CliError> {
    let mut t;
    match op {
        TorusOp::Degree { n, power } => {
            t = ResultTable::new("torus degree", config);
            let cs = clock_shift(*n)?;
            let [p1, p2] = [&cs.matrices()[0], &cs.matrices()[1]];
            let p2k = p2.pow(*power);
            let d = torus_degree(p1, &p2k)?;
            t.set("trace", complex(d.trace_value));
            t.set("k", d.k_estimate);
            t.set("defect", d.defect);
            t.set("defect_frobenius", d.defect_frobenius);
            t.set("defect_times_N", d.defect_constant());
            t.set("bound_holds", d.torus_bound_holds());
            t.set("integrality_gap", (d.trace_value - Complex64::new(0.0, 2.0 * PI * d.k_estimate as f64)).norm());
            t.set("N", d.dim);
        }
        TorusOp::Schild { n } => {
            t = ResultTable::new("torus schild", config);
            let s = unitary_schild(&clock_shift(*n)?);
            t.set("schild_action", s);
            t.set("limit", 4.0 * PI * PI);
        }
        TorusOp::Eom { n } => {
            t = ResultTable::new("torus eom", config);
            let r = torus_eom_residual(&clock_shift(*n)?);
            t.set("max_abs", r.norms.iter().copied().fold(0.0, f64::max));
            t.set("norms", r.norms);
        }
        TorusOp::Sphere { n, swap } => {
            t = ResultTable::new("torus sphere", config);
            let [x1, x2, x3] = fuzzy_sphere(*n)?;
            let d = if *swap { sphere_degree(&x1, &x3, &x2)? } else { sphere_degree(&x1, &x2, &x3)? };
            t.set("trace", complex(d.trace_value));
            t.set("k", d.k_estimate);
            t.set("defect", d.defect);
            t.set("defect_frobenius", d.defect_frobenius);
            t.set("N", d.dim);
        }
    }
    t.convention(TORUS_CONVENTION);
    Ok(t)
}
