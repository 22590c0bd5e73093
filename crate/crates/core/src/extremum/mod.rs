//! Convexity profile of the kernel `g(x) = x^(m/p) / (ts − rx)^β`, the
//! semiconcave-semiconvex reduction for constrained separable sums, the
//! `S_β` infimum and the `β₀` threshold.

mod brute;
mod reduce;
mod sbeta;

pub use brute::{grid_extremum, sbeta_brute_force, GridOptions, GridResult};
pub use reduce::{
    extremize_params, reduce_and_optimize, Bounds, Config, Endpoint, ExtremumOptions, ExtremumResult,
};
pub use sbeta::{beta0_j, beta0_threshold, beta_threshold, sbeta_infimum, sbeta_value};

use serde::{Deserialize, Serialize};

use crate::classify::ParabolaKernel;
use crate::error::{Error, Result};
use crate::num::pow;
use crate::params::ParamTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Shape {
    Convex,
    Concave,
    ConcaveThenConvex,
    ConvexThenConcave,
}

impl Shape {
    pub fn is_mixed(self) -> bool {
        matches!(self, Shape::ConcaveThenConvex | Shape::ConvexThenConcave)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeProfile {
    pub interval: (f64, f64),
    /// Present iff the shape is mixed; then `lo < c < hi`.
    pub inflection: Option<f64>,
    pub shape: Shape,
}

impl ShapeProfile {
    /// A profile for a kernel known only as a closure.
    pub fn new(interval: (f64, f64), inflection: Option<f64>, shape: Shape) -> Result<Self> {
        let (lo, hi) = interval;
        if !(lo < hi) {
            return Err(Error::invalid(format!("empty interval ({lo}, {hi})")));
        }
        match (shape.is_mixed(), inflection) {
            (true, Some(c)) if lo < c && c < hi => {}
            (false, None) => {}
            _ => return Err(Error::invalid("inflection must be given, inside the interval, exactly for mixed shapes")),
        }
        Ok(ShapeProfile { interval, inflection, shape })
    }
}

/// Upper end of the kernel's domain: `s` if `r ≤ t`, else `ts/r`.
pub fn domain_end(params: &ParamTuple, s: f64) -> f64 {
    if params.r <= params.t {
        s
    } else {
        params.t * s / params.r
    }
}

/// `g(x) = x^(m/p) / (ts − rx)^β`.
pub fn kernel_value(params: &ParamTuple, s: f64, x: f64) -> f64 {
    let ParamTuple { m, p, beta, t, r, .. } = *params;
    pow(x, m / p) / pow(t * s - r * x, beta)
}

/// `g''(x)` from the closed forms.
pub fn second_derivative(params: &ParamTuple, s: f64, x: f64) -> f64 {
    let ParamTuple { m, p, beta: b, t, r, .. } = *params;
    let q = m / p;
    let d = t * s - r * x;
    if b == -1.0 {
        m / (p * p) * pow(x, q - 2.0) * ((m - p) * t * s - (m + p) * r * x)
    } else if b * r == 0.0 {
        q * (q - 1.0) * pow(x, q - 2.0) / pow(d, b)
    } else {
        let y = x / d;
        let bracket = q * (q - 1.0) + 2.0 * m * b * r / p * y + b * (b + 1.0) * r * r * y * y;
        pow(x, q - 2.0) / pow(d, b) * bracket
    }
}

/// Points of `(0, T)` where `g''` may change sign.
fn sign_change_candidates(params: &ParamTuple, s: f64) -> Vec<f64> {
    let ParamTuple { m, p, beta: b, t, r, .. } = *params;
    if b == -1.0 {
        if (m + p) * r != 0.0 {
            return vec![(m - p) * t * s / ((m + p) * r)];
        }
        return Vec::new();
    }
    if b * r == 0.0 {
        return Vec::new();
    }
    let Some(roots) = ParabolaKernel::new(params).ok().and_then(|k| k.roots()) else {
        return Vec::new();
    };
    // y = x/(ts − rx) is increasing in x; its inverse is x = y·ts/(1 + ry)
    [roots.x1, roots.x2]
        .into_iter()
        .filter(|&y| y > 0.0 && 1.0 + r * y > 0.0)
        .map(|y| y * t * s / (1.0 + r * y))
        .collect()
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Convex/concave decomposition of `g` on `(lo, hi) ⊂ (0, T)`.
pub fn kernel_shape(params: &ParamTuple, s: f64, lo: f64, hi: f64) -> Result<ShapeProfile> {
    params.validate()?;
    if params.p == 0.0 {
        return Err(Error::precondition("the kernel needs p ≠ 0"));
    }
    if !(s > 0.0) {
        return Err(Error::invalid(format!("s must be positive, got {s}")));
    }
    let end = domain_end(params, s);
    if !(0.0 < lo && lo < hi && hi <= end) {
        return Err(Error::precondition(format!("need 0 < lo < hi ≤ T = {end}, got ({lo}, {hi})")));
    }
    let mut cuts: Vec<f64> = sign_change_candidates(params, s).into_iter().filter(|&c| lo < c && c < hi).collect();
    cuts.sort_by(f64::total_cmp);
    let mut edges = vec![lo];
    edges.extend(&cuts);
    edges.push(hi);

    // (sign, left edge) of each non-zero piece, adjacent equal signs merged
    let mut pieces: Vec<(i8, f64)> = Vec::new();
    for w in edges.windows(2) {
        let sg = sign(second_derivative(params, s, 0.5 * (w[0] + w[1])));
        if sg != 0 && pieces.last().map_or(true, |&(prev, _)| prev != sg) {
            pieces.push((sg, w[0]));
        }
    }
    match pieces.as_slice() {
        [] | [(1, _)] => ShapeProfile::new((lo, hi), None, Shape::Convex),
        [(_, _)] => ShapeProfile::new((lo, hi), None, Shape::Concave),
        [(first, _), (_, c)] => {
            let shape = if *first < 0 { Shape::ConcaveThenConvex } else { Shape::ConvexThenConcave };
            ShapeProfile::new((lo, hi), Some(*c), shape)
        }
        _ => Err(Error::UnsupportedShape { sign_changes: pieces.len() - 1, lo, hi }),
    }
}

/// The kernels of the worked examples, each with its parameters and the
/// extremum it is used for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "example", rename_all = "snake_case")]
pub enum ExampleKernel {
    /// `Σ ((s + 3aᵢ²)/aᵢ)^(1/2)` over four variables, minimized.
    Ex33,
    /// `Σ ((s + aᵢ)aᵢ)^(2/3)` over four variables, maximized.
    Ex34,
    /// `Σ (aᵢ/(2s − aᵢ))^β` over three variables, maximized.
    Ex35 { beta: f64 },
    /// `S_β = Σ (aᵢ/(s − aᵢ))^β` over `n` variables, minimized.
    Ex41 { n: usize, beta: f64 },
}

impl ExampleKernel {
    pub fn parse(name: &str, beta: Option<f64>, n: Option<usize>) -> Result<Self> {
        let need_beta = || beta.ok_or_else(|| Error::invalid(format!("example {name} needs beta")));
        match name {
            "3.3" => Ok(ExampleKernel::Ex33),
            "3.4" => Ok(ExampleKernel::Ex34),
            "3.5" => Ok(ExampleKernel::Ex35 { beta: need_beta()? }),
            "4.1" => Ok(ExampleKernel::Ex41 { n: n.unwrap_or(3), beta: need_beta()? }),
            _ => Err(Error::invalid(format!("unknown example {name:?}; expected 3.3, 3.4, 3.5 or 4.1"))),
        }
    }

    pub fn params(self) -> Result<ParamTuple> {
        match self {
            ExampleKernel::Ex33 => ParamTuple::new(4, -0.5, 2.0, -0.5, 1.0, -3.0),
            ExampleKernel::Ex34 => ParamTuple::new(4, 2.0 / 3.0, 1.0, -2.0 / 3.0, 1.0, -1.0),
            ExampleKernel::Ex35 { beta } => ParamTuple::new(3, beta, 1.0, beta, 2.0, 1.0),
            ExampleKernel::Ex41 { n, beta } => ParamTuple::new(n, beta, 1.0, beta, 1.0, 1.0),
        }
    }

    pub fn mode(self) -> Mode {
        match self {
            ExampleKernel::Ex33 | ExampleKernel::Ex41 { .. } => Mode::Min,
            ExampleKernel::Ex34 | ExampleKernel::Ex35 { .. } => Mode::Max,
        }
    }

    /// The closed-form extremum for power sum `s`.
    pub fn expected(self, s: f64) -> Result<f64> {
        Ok(match self {
            ExampleKernel::Ex33 => 2.0 * 14f64.sqrt() * s.powf(0.25),
            ExampleKernel::Ex34 => (25.0 * s.powi(4) / 4.0).cbrt(),
            ExampleKernel::Ex35 { beta } => 3.0 / 5f64.powf(beta),
            ExampleKernel::Ex41 { n, beta } => sbeta_infimum(n, beta)?,
        })
    }

    pub fn extremize(self, s: f64, opts: &ExtremumOptions) -> Result<ExtremumResult> {
        extremize_params(&self.params()?, s, self.mode(), opts)
    }
}
