//! Exact evaluation of the left-hand side and both right-hand forms, plus the
//! cyclic windowed variant.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::{self, is_integer, pow};
use crate::params::ParamTuple;
use crate::point::PointVec;

/// Bases below this (but positive) mark an evaluation as near-singular.
pub const NEAR_SINGULAR: f64 = 1.0e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub lhs: f64,
    /// `n^(β+1−m/p) / (nt−r)^β · s^(m/p−β)`; absent when `p = 0`.
    pub rhs_power: Option<f64>,
    /// `(nt−r)^(−β) · Σ aᵢ^(m−βp)`.
    pub rhs_sum: f64,
    pub s: f64,
    /// Some denominator base fell in `(0, 1e−300)`.
    pub near_singular: bool,
}

fn check_shape(params: &ParamTuple, a: &PointVec) -> Result<()> {
    if a.len() != params.n {
        return Err(Error::invalid(format!("point has {} coordinates, n = {}", a.len(), params.n)));
    }
    if a.exponent() != params.p {
        return Err(Error::invalid(format!(
            "point powers were computed for p = {}, params have p = {}",
            a.exponent(),
            params.p
        )));
    }
    Ok(())
}

/// `t·s − r·aᵢ^p` for every `i`, evaluated as `t·Σ_{j≠i} a_j^p + (t−r)·aᵢ^p`.
/// Errors when a base is `≤ 0`.
pub fn denominator_bases(params: &ParamTuple, a: &PointVec) -> Result<Vec<f64>> {
    check_shape(params, a)?;
    let others = a.leave_one_out();
    let (t, r) = (params.t, params.r);
    a.powers()
        .iter()
        .zip(others)
        .enumerate()
        .map(|(i, (&x, rest))| {
            let base = t * rest + (t - r) * x;
            if base > 0.0 {
                Ok(base)
            } else {
                Err(Error::domain(format!(
                    "t·s − r·a[{i}]^p = {base:e} ≤ 0 (requires t·s > r·aᵢ^p)"
                )))
            }
        })
        .collect()
}

fn lhs_from_bases(params: &ParamTuple, a: &PointVec, bases: &[f64]) -> f64 {
    num::sum(
        a.coords()
            .iter()
            .zip(bases)
            .map(|(&x, &b)| pow(x, params.m) / pow(b, params.beta)),
    )
}

/// `Σ aᵢ^m / (t·s − r·aᵢ^p)^β`.
pub fn lhs_sum(params: &ParamTuple, a: &PointVec) -> Result<f64> {
    let bases = denominator_bases(params, a)?;
    Ok(lhs_from_bases(params, a, &bases))
}

/// `(n·t − r)^e`, defined for a negative base only when `e` is an integer.
fn nt_minus_r_pow(params: &ParamTuple, e: f64) -> Result<f64> {
    let base = params.nt_minus_r();
    if base > 0.0 || (base < 0.0 && is_integer(e)) || (base == 0.0 && e >= 0.0) {
        Ok(pow(base, e))
    } else {
        Err(Error::domain(format!("n·t − r = {base} cannot be raised to {e}")))
    }
}

/// `n^(β+1−m/p) / (nt−r)^β · s^(m/p−β)`.
pub fn rhs_power_form(params: &ParamTuple, a: &PointVec) -> Result<f64> {
    check_shape(params, a)?;
    rhs_power_from_s(params, a.s())
}

pub(crate) fn rhs_power_from_s(params: &ParamTuple, s: f64) -> Result<f64> {
    if params.p == 0.0 {
        return Err(Error::precondition("the power form needs p ≠ 0"));
    }
    let ratio = params.m / params.p;
    let n = params.n as f64;
    Ok(pow(n, params.beta + 1.0 - ratio) * nt_minus_r_pow(params, -params.beta)? * pow(s, ratio - params.beta))
}

/// `(nt−r)^(−β) · Σ aᵢ^(m−βp)`.
pub fn rhs_sum_form(params: &ParamTuple, a: &PointVec) -> Result<f64> {
    check_shape(params, a)?;
    let e = params.m - params.beta * params.p;
    let total = num::sum(a.coords().iter().map(|&x| pow(x, e)));
    Ok(nt_minus_r_pow(params, -params.beta)? * total)
}

/// Evaluate every quantity at once.
pub fn evaluate(params: &ParamTuple, a: &PointVec) -> Result<EvalResult> {
    let bases = denominator_bases(params, a)?;
    let lhs = lhs_from_bases(params, a, &bases);
    let rhs_power = if params.p == 0.0 { None } else { Some(rhs_power_from_s(params, a.s())?) };
    Ok(EvalResult {
        lhs,
        rhs_power,
        rhs_sum: rhs_sum_form(params, a)?,
        s: a.s(),
        near_singular: bases.iter().any(|&b| b < NEAR_SINGULAR),
    })
}

/// Cyclic window sums `Aᵢ = aᵢ^p + ⋯ + a_{i+k−1}^p` (indices mod n).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSum {
    pub k: usize,
    pub sums: Vec<f64>,
    /// `Σ Aᵢ = k·s`.
    pub total: f64,
}

impl WindowSum {
    pub fn new(a: &PointVec, k: usize) -> Result<Self> {
        let n = a.len();
        if k == 0 || k >= n {
            return Err(Error::invalid(format!("window length k = {k} must lie in [1, {}]", n - 1)));
        }
        let pw = a.powers();
        let sums: Vec<f64> = (0..n).map(|i| num::sum((0..k).map(|j| pw[(i + j) % n]))).collect();
        let total = num::sum(sums.iter().copied());
        Ok(WindowSum { k, sums, total })
    }

    /// `s − Aᵢ`: the complementary window, summed directly.
    fn complement(&self, a: &PointVec, i: usize) -> f64 {
        let n = a.len();
        let pw = a.powers();
        num::sum((self.k..n).map(|j| pw[(i + j) % n]))
    }
}

/// `Σ Aᵢ^m / (t·s − r·Aᵢ)^β` over cyclic windows of length `k`.
pub fn windowed_lhs(params: &ParamTuple, a: &PointVec, k: usize) -> Result<f64> {
    check_shape(params, a)?;
    let w = WindowSum::new(a, k)?;
    let (t, r) = (params.t, params.r);
    let mut acc = num::Sum::new();
    for (i, &big_a) in w.sums.iter().enumerate() {
        let base = t * w.complement(a, i) + (t - r) * big_a;
        if !(base > 0.0) {
            return Err(Error::domain(format!("t·s − r·A[{i}] = {base:e} ≤ 0")));
        }
        acc.add(pow(big_a, params.m) / pow(base, params.beta));
    }
    Ok(acc.value())
}

/// `k^m n^(β+1−m) / (nt − kr)^β · s^(m−β)`.
pub fn windowed_rhs(params: &ParamTuple, s: f64, k: usize) -> Result<f64> {
    let n = params.n as f64;
    let kf = k as f64;
    let base = n * params.t - kf * params.r;
    if !(base > 0.0) && !(base < 0.0 && is_integer(params.beta)) {
        return Err(Error::domain(format!("n·t − k·r = {base} is not a valid base")));
    }
    Ok(pow(kf, params.m) * pow(n, params.beta + 1.0 - params.m) / pow(base, params.beta)
        * pow(s, params.m - params.beta))
}

/// The parameters under which the windowed sum is an instance of the power
/// form: `A` plays the role of `a^p` with `p = 1` and `t ↦ t/k`.
pub fn windowed_params(params: &ParamTuple, k: usize) -> ParamTuple {
    ParamTuple { p: 1.0, t: params.t / k as f64, ..*params }
}
