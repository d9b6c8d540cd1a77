use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::exactmath::{parse_rational, rational_to_f64, Rational};

/// A number given on the command line as a decimal or as an exact `p/q`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumArg {
    pub text: String,
    pub value: f64,
    /// Present when the text is an integer or a fraction `p/q`.
    pub exact: Option<Rational>,
}

impl Serialize for NumArg {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.text)
    }
}

pub fn parse_num(text: &str) -> Result<NumArg, String> {
    let text = text.trim();
    if let Ok(q) = parse_rational(text) {
        return Ok(NumArg {
            text: text.to_string(),
            value: rational_to_f64(&q),
            exact: Some(q),
        });
    }
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(NumArg {
            text: text.to_string(),
            value: v,
            exact: None,
        }),
        _ => Err(format!("`{text}` is not a finite decimal or a fraction p/q")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Catenoid,
    Enneper,
    Hyperbola,
    Parabola,
    Sphere,
}

/// Quantized minimal surfaces: recursions, exact tau-functions and
/// matrix-model residuals.
#[derive(Debug, Parser, Serialize)]
#[command(name = "qms", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Arithmetic for operations that support exact rationals.
    #[arg(long, global = true, value_enum, default_value = "float")]
    pub mode: Mode,
    /// Seed for randomized probes.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Run the command for several values of one flag in parallel:
    /// `--sweep eps=0.02,0.01,0.005`. Output is ordered by value.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    #[command(subcommand)]
    pub module: Module,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "module", content = "op", rename_all = "lowercase")]
pub enum Module {
    /// Exact polynomial arithmetic.
    #[command(subcommand)]
    Exactmath(ExactOp),
    /// Catenoid, Enneper, helicoid and hyperbola.
    #[command(subcommand)]
    Surfaces(SurfaceOp),
    /// The complex parabola recursion and its tau-functions.
    #[command(subcommand)]
    Parabola(ParabolaOp),
    /// Matrix residuals and actions.
    #[command(subcommand)]
    Operators(OperatorOp),
    /// Clock/shift matrices and quantum degrees.
    #[command(subcommand)]
    Torus(TorusOp),
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum ExactOp {
    /// Exact quotient a / b of polynomials (coefficients low to high).
    PolyDiv {
        #[arg(long, value_parser = parse_num, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<NumArg>,
        #[arg(long, value_parser = parse_num, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<NumArg>,
    },
    /// Reduced form of num / den (coefficients low to high).
    Reduce {
        #[arg(long, value_parser = parse_num, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        num: Vec<NumArg>,
        #[arg(long, value_parser = parse_num, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        den: Vec<NumArg>,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct CatenoidArgs {
    #[arg(long, default_value = "1", value_parser = parse_num, allow_hyphen_values = true)]
    pub c: NumArg,
    #[arg(long, default_value = "1", value_parser = parse_num)]
    pub r0: NumArg,
    #[arg(long, default_value = "2", value_parser = parse_num)]
    pub r1: NumArg,
    #[arg(long, default_value = "0", value_parser = parse_num, allow_hyphen_values = true)]
    pub z0: NumArg,
    #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
    pub n_min: i64,
    #[arg(long, default_value_t = 10)]
    pub n_max: i64,
    /// Bit budget for exact mode.
    #[arg(long, default_value_t = crate::surfaces::DEFAULT_EXACT_BIT_BUDGET)]
    pub bit_budget: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum SurfaceOp {
    /// Catenoid recursion from (r0, r1, z0) with its classification.
    Catenoid(CatenoidArgs),
    /// Discretized continuum catenoid and its large-|n| asymptotics.
    CatenoidClosed {
        #[arg(long, default_value = "1", value_parser = parse_num)]
        a: NumArg,
        #[arg(long, default_value = "0.1", value_parser = parse_num)]
        hbar: NumArg,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 10)]
        n_max: i64,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
    },
    /// Convergence order of the continuum catenoid residual at fixed n*hbar.
    CatenoidOrder {
        #[arg(long, default_value = "1", value_parser = parse_num)]
        a: NumArg,
        /// Fixed product n*hbar.
        #[arg(long, default_value = "1", value_parser = parse_num, allow_hyphen_values = true)]
        p: NumArg,
        #[arg(long, default_value = "0.01", value_parser = parse_num)]
        hbar: NumArg,
        #[arg(long, default_value_t = 4)]
        halvings: u32,
    },
    /// Enneper radial weights sigma_n and the closed-form approximation.
    Enneper {
        #[arg(long, default_value = "0.1", value_parser = parse_num)]
        hbar: NumArg,
        #[arg(long, default_value = "0", value_parser = parse_num, allow_hyphen_values = true)]
        c: NumArg,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Helicoid profile and functional-equation residual on a grid.
    Helicoid {
        #[arg(long, default_value = "0.1", value_parser = parse_num)]
        hbar: NumArg,
        #[arg(long, default_value = "-2", value_parser = parse_num, allow_hyphen_values = true)]
        x_min: NumArg,
        #[arg(long, default_value = "2", value_parser = parse_num, allow_hyphen_values = true)]
        x_max: NumArg,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Exact complex-hyperbola solution and its recursion residual.
    Hyperbola {
        #[arg(long, default_value = "1", value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, default_value = "0", value_parser = parse_num, allow_hyphen_values = true)]
        delta: NumArg,
        /// |c|.
        #[arg(long, default_value = "1", value_parser = parse_num)]
        c: NumArg,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 10)]
        n_max: i64,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum ParabolaOp {
    /// Orbit of the recursion from v_0 = x.
    Iterate {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, value_parser = parse_num, allow_hyphen_values = true)]
        x: NumArg,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Shooting for the unique everywhere-positive initial value.
    Shoot {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, default_value = "1e-15", value_parser = parse_num)]
        tol: NumArg,
        #[arg(long, default_value_t = 400)]
        n_max: usize,
    },
    /// Small-eps expansion of the positive initial value.
    Series {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
    },
    /// Continuum approximation -1/4 + sqrt(1/16 + n hbar + c).
    Closed {
        #[arg(long, value_parser = parse_num)]
        hbar: NumArg,
        #[arg(long, value_parser = parse_num, allow_hyphen_values = true)]
        c: NumArg,
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        n_min: i64,
        #[arg(long, default_value_t = 10)]
        n_max: i64,
    },
    /// Nested interval endpoints c_0, c_1, ...
    Endpoints {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, default_value_t = 30)]
        n_max: usize,
    },
    /// Exact u-polynomials u_0..u_n (coefficients highest degree first).
    Upoly {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long)]
        n: usize,
    },
    /// Exact tau-functions tau_0..tau_n (coefficients highest degree first).
    Tau {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long)]
        n: usize,
    },
    /// Exact check of the conserved tau-function identities for 1..=n.
    Conserved {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Orbit for the monomial pair Z1 = W^p, Z2 = W^q; without --seeds the
    /// seeds come from a zoomed grid search.
    Monomial {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        q: usize,
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, value_parser = parse_num, value_delimiter = ',')]
        seeds: Option<Vec<NumArg>>,
        #[arg(long, default_value_t = 40)]
        grid: usize,
        #[arg(long, default_value_t = 6)]
        levels: usize,
        #[arg(long, default_value_t = 60)]
        n_max: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum OperatorOp {
    /// Interior residual of an embedded surface.
    Residual {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long = "N", default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        margin: usize,
        /// Model parameter: hbar (Enneper), eps (hyperbola, parabola).
        #[arg(long, value_parser = parse_num)]
        param: Option<NumArg>,
    },
    /// Matrix Schild action of the fuzzy sphere.
    Schild {
        #[arg(long = "N", default_value_t = 2)]
        n: usize,
    },
    /// Moments of the parabola shift built from the shooting orbit, against
    /// the exact tau-functions at the same initial value.
    Moment {
        #[arg(long, value_parser = parse_num)]
        eps: NumArg,
        #[arg(long, default_value_t = 5)]
        n: usize,
    },
    /// Unitary equivariance of the double-commutator residual.
    Equivariance {
        #[arg(long = "N", default_value_t = 8)]
        n: usize,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum TorusOp {
    /// Quantum degree of the clock/shift pair, optionally with the clock
    /// raised to a power.
    Degree {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Unitary Schild action of clock/shift.
    Schild {
        #[arg(long = "N")]
        n: usize,
    },
    /// Equations-of-motion residual of clock/shift.
    Eom {
        #[arg(long = "N")]
        n: usize,
    },
    /// Quantum degree of the fuzzy sphere.
    Sphere {
        #[arg(long = "N")]
        n: usize,
        /// Exchange X_2 and X_3 (reverses orientation).
        #[arg(long)]
        swap: bool,
    },
}
