//! Real-argument Hurwitz-Lerch zeta `ζ(z, β, a) = Σ_{j≥0} zʲ/(j+a)^β` with
//! certified truncation, and the extremal relation for the weighted sums
//! `Σ xᵢ·ζ(z, β, a − r·xᵢ)` over the open simplex.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::num::{pow, Sum};

/// Default cap on the number of series terms.
pub const DEFAULT_TERM_CAP: u64 = 100_000_000;

/// Tolerance on `Σ xᵢ = 1` for [`SimplexPoint`].
pub const SIMPLEX_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaArgs {
    pub z: f64,
    pub beta: f64,
    pub a: f64,
}

impl ZetaArgs {
    /// Checks the real convergence regime: `0 < z < 1`, or `z = 1` with `β > 1`.
    pub fn new(z: f64, beta: f64, a: f64) -> Result<Self> {
        let args = ZetaArgs { z, beta, a };
        args.validate()?;
        Ok(args)
    }

    pub fn validate(&self) -> Result<()> {
        let ZetaArgs { z, beta, a } = *self;
        if !(z.is_finite() && beta.is_finite() && a.is_finite()) {
            return Err(Error::invalid(format!("non-finite argument in ({z}, {beta}, {a})")));
        }
        if !(a > 0.0) {
            return Err(Error::domain(format!("offset must be positive, got a = {a}")));
        }
        if !(z > 0.0) {
            return Err(Error::domain(format!("z must be positive, got {z}")));
        }
        if z > 1.0 {
            return Err(Error::Convergence(format!("z = {z} > 1")));
        }
        if z == 1.0 && beta <= 1.0 {
            return Err(Error::Convergence(format!("z = 1 needs β > 1, got β = {beta}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaSum {
    pub value: f64,
    /// Number of terms summed.
    pub terms: u64,
    /// Upper bound on the omitted tail.
    pub tail_bound: f64,
}

/// Bound on `Σ_{j>J} zʲ/(j+a)^β`, or `∞` when none is available yet.
fn tail_bound(args: &ZetaArgs, last: u64) -> f64 {
    let ZetaArgs { z, beta, a } = *args;
    let j1 = last as f64 + 1.0;
    if z == 1.0 {
        // Σ_{j>J} (j+a)^(−β) ≤ ∫_J^∞ (x+a)^(−β) dx
        return pow(last as f64 + a, 1.0 - beta) / (beta - 1.0);
    }
    let head = pow(z, j1) * pow(j1 + a, -beta);
    if beta >= 0.0 {
        head / (1.0 - z)
    } else {
        // consecutive term ratios z·(1 + 1/(j+a))^(−β) decrease in j, so the
        // tail is majorized by a geometric series with the first ratio
        let ratio = z * pow(1.0 + 1.0 / (j1 + a), -beta);
        if ratio < 1.0 {
            head / (1.0 - ratio)
        } else {
            f64::INFINITY
        }
    }
}

/// Terms needed when it can be bounded up front; used to fail early.
fn term_estimate(args: &ZetaArgs, abs_tol: f64) -> f64 {
    let ZetaArgs { z, beta, a } = *args;
    let target = 0.5 * abs_tol;
    if z == 1.0 {
        (target * (beta - 1.0)).powf(1.0 / (1.0 - beta)) - a + 1.0
    } else if beta >= 0.0 && a >= 1.0 {
        ((target * (1.0 - z)).ln() / z.ln()).max(0.0) + 1.0
    } else {
        0.0
    }
}

/// `ζ(z, β, a)` truncated once the tail bound is at most `abs_tol/2`.
pub fn hurwitz_lerch_with_cap(args: &ZetaArgs, abs_tol: f64, cap: u64) -> Result<ZetaSum> {
    args.validate()?;
    if !(abs_tol > 0.0) {
        return Err(Error::invalid(format!("abs_tol must be positive, got {abs_tol}")));
    }
    let needed = term_estimate(args, abs_tol);
    if needed > cap as f64 {
        return Err(Error::Budget { needed, cap });
    }
    let ZetaArgs { z, beta, a } = *args;
    let target = 0.5 * abs_tol;
    let mut acc = Sum::new();
    let mut zj = 1.0;
    let mut j: u64 = 0;
    loop {
        acc.add(zj * pow(j as f64 + a, -beta));
        let bound = tail_bound(args, j);
        if bound <= target {
            return Ok(ZetaSum { value: acc.value(), terms: j + 1, tail_bound: bound });
        }
        j += 1;
        if j >= cap {
            return Err(Error::Budget { needed: needed.max(cap as f64 + 1.0), cap });
        }
        zj *= z;
    }
}

pub fn hurwitz_lerch(args: &ZetaArgs, abs_tol: f64) -> Result<f64> {
    hurwitz_lerch_with_cap(args, abs_tol, DEFAULT_TERM_CAP).map(|s| s.value)
}

/// A point of `{x ∈ ℝⁿ : xᵢ > 0, Σ xᵢ = 1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimplexPoint {
    x: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::invalid("empty simplex point"));
        }
        if x.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::domain("simplex coordinates must be positive"));
        }
        let total: f64 = x.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::domain(format!("coordinates sum to {total}, not 1")));
        }
        Ok(SimplexPoint { x })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("empty simplex point"));
        }
        Ok(SimplexPoint { x: vec![1.0 / n as f64; n] })
    }

    /// Uniform on the simplex: normalized independent `Exp(1)` draws.
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("empty simplex point"));
        }
        loop {
            let e: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
            let total: f64 = e.iter().sum();
            let x: Vec<f64> = e.iter().map(|v| v / total).collect();
            if x.iter().all(|&v| v > 0.0) {
                return Ok(SimplexPoint { x });
            }
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

impl<'de> Deserialize<'de> for SimplexPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let x = Vec::<f64>::deserialize(d)?;
        SimplexPoint::new(x).map_err(serde::de::Error::custom)
    }
}

/// `Σ xᵢ·ζ(z, β, a_n − r·xᵢ)`, each series to `abs_tol/n`.
pub fn weighted_zeta_sum(x: &SimplexPoint, z: f64, beta: f64, a_n: f64, r: f64, abs_tol: f64) -> Result<f64> {
    let n = x.len() as f64;
    let mut acc = Sum::new();
    for &xi in x.coords() {
        let off = a_n - r * xi;
        if !(off > 0.0) {
            return Err(Error::domain(format!("shifted offset a − r·x = {off} is not positive")));
        }
        acc.add(xi * hurwitz_lerch(&ZetaArgs::new(z, beta, off)?, abs_tol / n)?);
    }
    Ok(acc.value())
}

/// Which extremum the uniform point is certified to give.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtremalCase {
    MinAtUniform,
    MaxAtUniform,
    Constant,
    Uncertified,
}

impl std::fmt::Display for ExtremalCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExtremalCase::MinAtUniform => "MIN_AT_UNIFORM",
            ExtremalCase::MaxAtUniform => "MAX_AT_UNIFORM",
            ExtremalCase::Constant => "CONSTANT",
            ExtremalCase::Uncertified => "UNCERTIFIED",
        })
    }
}

/// `alpha` is the infimum of the offset sequence; it must exceed `r`.
pub fn extremal_case(beta: f64, r: f64, alpha: f64) -> Result<ExtremalCase> {
    if !(beta.is_finite() && r.is_finite() && alpha.is_finite()) {
        return Err(Error::invalid("non-finite argument"));
    }
    if !(alpha > r) {
        return Err(Error::precondition(format!("need α > r, got α = {alpha}, r = {r}")));
    }
    let wide = 2.0 * (alpha - r) >= -(beta + 1.0) * r;
    Ok(if beta * r > 0.0 {
        ExtremalCase::MinAtUniform
    } else if beta * r == 0.0 {
        ExtremalCase::Constant
    } else if (beta > 0.0 && r < 0.0 && wide) || (beta < -1.0 && r > 0.0 && wide) || ((-1.0..0.0).contains(&beta) && r > 0.0) {
        ExtremalCase::MaxAtUniform
    } else {
        ExtremalCase::Uncertified
    })
}

/// `(Σ xᵢ/(j + a − r·xᵢ)^β, (j + a − r/n)^(−β))`: one term of the weighted
/// sum against the same term at the uniform point.
pub fn termwise_sides(x: &SimplexPoint, j: u64, a_n: f64, r: f64, beta: f64) -> (f64, f64) {
    let base = j as f64 + a_n;
    let lhs = x.coords().iter().map(|&xi| xi * pow(base - r * xi, -beta)).sum();
    let rhs = pow(base - r / x.len() as f64, -beta);
    (lhs, rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaProblem {
    pub n: usize,
    pub z: f64,
    pub beta: f64,
    pub a_n: f64,
    pub r: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalityReport {
    pub case: ExtremalCase,
    pub uniform: f64,
    pub samples: usize,
    /// Largest amount by which a sample beat the uniform value in the
    /// certified direction (non-positive when the claim held everywhere).
    pub worst_excess: f64,
    pub worst_point: Option<Vec<f64>>,
    pub violations: usize,
}

/// Compare the uniform point against `samples` Dirichlet-uniform points.
/// Sample `i` uses a generator seeded with `seed + i`.
pub fn check_extremality(
    prob: &ZetaProblem,
    samples: usize,
    seed: u64,
    slack: f64,
    abs_tol: f64,
    exec: Exec,
) -> Result<ExtremalityReport> {
    let ZetaProblem { n, z, beta, a_n, r, alpha } = *prob;
    if a_n < alpha {
        return Err(Error::precondition(format!("a_n = {a_n} is below its infimum α = {alpha}")));
    }
    let case = extremal_case(beta, r, alpha)?;
    let uniform = weighted_zeta_sum(&SimplexPoint::uniform(n)?, z, beta, a_n, r, abs_tol)?;
    // positive when the sample beats the uniform point
    let excess = |v: f64| match case {
        ExtremalCase::MinAtUniform => uniform - v,
        ExtremalCase::MaxAtUniform => v - uniform,
        ExtremalCase::Constant => (v - uniform).abs(),
        ExtremalCase::Uncertified => f64::NEG_INFINITY,
    };
    let results = exec.map(samples, |i| -> Result<(f64, Vec<f64>)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let x = SimplexPoint::sample(n, &mut rng)?;
        let v = weighted_zeta_sum(&x, z, beta, a_n, r, abs_tol)?;
        Ok((excess(v), x.x))
    });
    let mut worst = (f64::NEG_INFINITY, None);
    let mut violations = 0;
    for res in results {
        let (e, x) = res?;
        if e > slack {
            violations += 1;
        }
        if e > worst.0 {
            worst = (e, Some(x));
        }
    }
    Ok(ExtremalityReport { case, uniform, samples, worst_excess: worst.0, worst_point: worst.1, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn closed_forms() {
        for z in [0.1, 0.5, 0.9] {
            let v = hurwitz_lerch(&ZetaArgs::new(z, 1.0, 1.0).unwrap(), 1e-12).unwrap();
            assert!((v + (-z).ln_1p() / z).abs() < 1e-12, "z = {z}");
        }
        let v = hurwitz_lerch(&ZetaArgs::new(0.5, 1.0, 1.0).unwrap(), 1e-12).unwrap();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-12);
        let v = hurwitz_lerch(&ZetaArgs::new(1.0, 2.0, 1.0).unwrap(), 1e-6).unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-6);
        let v = hurwitz_lerch(&ZetaArgs::new(1e-300, 2.5, 3.0).unwrap(), 1e-12).unwrap();
        assert_relative_eq!(v, 3f64.powf(-2.5), max_relative = 1e-15);
    }

    #[test]
    fn negative_beta_tail() {
        // Σ zʲ (j+1) = 1/(1−z)²
        let z = 0.7;
        let v = hurwitz_lerch(&ZetaArgs::new(z, -1.0, 1.0).unwrap(), 1e-10).unwrap();
        assert!((v - 1.0 / (1.0 - z).powi(2)).abs() < 1e-10);
    }

    #[test]
    fn regime_and_budget() {
        assert!(matches!(ZetaArgs::new(1.0, 1.0, 1.0), Err(Error::Convergence(_))));
        assert!(matches!(ZetaArgs::new(1.5, 3.0, 1.0), Err(Error::Convergence(_))));
        assert!(matches!(ZetaArgs::new(0.5, 1.0, 0.0), Err(Error::Domain(_))));
        let args = ZetaArgs::new(1.0, 1.01, 1.0).unwrap();
        assert!(matches!(hurwitz_lerch(&args, 1e-10), Err(Error::Budget { .. })));
        let args = ZetaArgs::new(0.999, -1.0, 1.0).unwrap();
        assert!(matches!(hurwitz_lerch_with_cap(&args, 1e-10, 1000), Err(Error::Budget { .. })));
    }

    #[test]
    fn cases() {
        assert_eq!(extremal_case(2.0, 1.0, 2.0).unwrap(), ExtremalCase::MinAtUniform);
        assert_eq!(extremal_case(-0.5, 1.0, 2.0).unwrap(), ExtremalCase::MaxAtUniform);
        assert_eq!(extremal_case(-1.0, 1.0, 2.0).unwrap(), ExtremalCase::MaxAtUniform);
        assert_eq!(extremal_case(0.0, 1.0, 2.0).unwrap(), ExtremalCase::Constant);
        assert_eq!(extremal_case(2.0, -1.0, 0.5).unwrap(), ExtremalCase::MaxAtUniform);
        assert_eq!(extremal_case(2.0, -1.0, 0.1).unwrap(), ExtremalCase::Uncertified);
        assert_eq!(extremal_case(-3.0, 1.0, 1.5).unwrap(), ExtremalCase::Uncertified);
        assert_eq!(extremal_case(-3.0, 1.0, 3.0).unwrap(), ExtremalCase::MaxAtUniform);
        assert!(matches!(extremal_case(1.0, 2.0, 2.0), Err(Error::Precondition(_))));
    }

    #[test]
    fn weighted_sums() {
        let x = SimplexPoint::new(vec![0.6, 0.3, 0.1]).unwrap();
        let v = weighted_zeta_sum(&x, 0.5, 2.0, 2.0, 1.0, 1e-12).unwrap();
        let u = hurwitz_lerch(&ZetaArgs::new(0.5, 2.0, 2.0 - 1.0 / 3.0).unwrap(), 1e-12).unwrap();
        assert!(v > u);
        let uni = weighted_zeta_sum(&SimplexPoint::uniform(3).unwrap(), 0.5, 2.0, 2.0, 1.0, 1e-12).unwrap();
        assert!((uni - u).abs() < 1e-12);
        // βr = 0: independent of x
        let a = weighted_zeta_sum(&x, 0.5, 2.0, 2.0, 0.0, 1e-12).unwrap();
        let b = hurwitz_lerch(&ZetaArgs::new(0.5, 2.0, 2.0).unwrap(), 1e-12).unwrap();
        assert!((a - b).abs() < 1e-12);
        assert!(matches!(weighted_zeta_sum(&x, 0.5, 2.0, 0.5, 1.0, 1e-12), Err(Error::Domain(_))));
    }

    #[test]
    fn simplex_points() {
        assert!(SimplexPoint::new(vec![0.5, 0.5]).is_ok());
        assert!(SimplexPoint::new(vec![0.0, 1.0]).is_err());
        assert!(SimplexPoint::new(vec![0.5, 0.6]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in [2, 3, 5] {
            let p = SimplexPoint::sample(n, &mut rng).unwrap();
            assert_eq!(p.len(), n);
            assert!((p.coords().iter().sum::<f64>() - 1.0).abs() < SIMPLEX_TOL);
        }
        let p: SimplexPoint = serde_json::from_str("[0.25, 0.75]").unwrap();
        assert_eq!(p.coords(), &[0.25, 0.75]);
        assert!(serde_json::from_str::<SimplexPoint>("[0.25, 0.7]").is_err());
    }

    #[test]
    fn extremality_small() {
        let prob = ZetaProblem { n: 3, z: 0.5, beta: 2.0, a_n: 2.0, r: 1.0, alpha: 2.0 };
        let rep = check_extremality(&prob, 500, 7, 1e-10, 1e-13, Exec::default()).unwrap();
        assert_eq!(rep.case, ExtremalCase::MinAtUniform);
        assert_eq!(rep.violations, 0);
        let prob = ZetaProblem { beta: -0.5, ..prob };
        let rep = check_extremality(&prob, 500, 7, 1e-10, 1e-13, Exec::default()).unwrap();
        assert_eq!(rep.case, ExtremalCase::MaxAtUniform);
        assert_eq!(rep.violations, 0);
    }
}
