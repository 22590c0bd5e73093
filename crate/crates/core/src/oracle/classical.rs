//! Reference implementations of the classical inequalities the theory is
//! built from, used as self-checks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::Direction;
use crate::error::{Error, Result};
use crate::expr::denominator_bases;
use crate::num::{self, pow};
use crate::params::ParamTuple;
use crate::point::PointVec;

const REL_TOL: f64 = 1.0e-10;
const FLOOR: f64 = 1.0e-14;

/// `lhs ≥ rhs` up to `1e−10` relative to the larger side.
fn geq(lhs: f64, rhs: f64) -> bool {
    lhs - rhs >= -(REL_TOL * lhs.abs().max(rhs.abs())).max(FLOOR)
}

fn holds(direction: Direction, lhs: f64, rhs: f64) -> bool {
    match direction {
        Direction::Geq => geq(lhs, rhs),
        Direction::Leq => geq(rhs, lhs),
        _ => geq(lhs, rhs) && geq(rhs, lhs),
    }
}

fn check_positive(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::invalid(format!("{name} is empty")));
    }
    match v.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        Some(x) => Err(Error::invalid(format!("{name} has a non-positive entry {x}"))),
        None => Ok(()),
    }
}

fn check_same_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::invalid(format!("lengths differ: {} vs {}", a.len(), b.len())));
    }
    Ok(())
}

fn check_sorted(name: &str, v: &[f64]) -> Result<()> {
    if v.windows(2).all(|w| w[0] <= w[1]) {
        Ok(())
    } else {
        Err(Error::Sort(format!("{name} is not ascending")))
    }
}

fn dot(a: &[f64], b: impl Iterator<Item = f64>) -> f64 {
    num::sum(a.iter().zip(b).map(|(x, y)| x * y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum RadonRegime {
    Geq,
    Leq,
    /// `q = 0, p = 1`: both regimes apply and the two sides coincide.
    Equal,
}

/// Which side of the generalized Radon inequality `(p, q)` certifies.
pub fn radon_regime(p: f64, q: f64) -> Result<RadonRegime> {
    let ge = (q < -1.0 || q >= 0.0) && p >= q + 1.0 && p * (q + 1.0) > 0.0;
    let le = q > -1.0 && q <= 0.0 && p > 0.0 && p <= q + 1.0;
    match (ge, le) {
        (true, true) => Ok(RadonRegime::Equal),
        (true, false) => Ok(RadonRegime::Geq),
        (false, true) => Ok(RadonRegime::Leq),
        (false, false) => Err(Error::Regime(format!("Radon exponents p = {p}, q = {q}"))),
    }
}

/// `Σ aᵢ^p / bᵢ^q` against `n^(q+1−p) (Σaᵢ)^p / (Σbᵢ)^q` on the side the
/// regime of `(p, q)` certifies.
pub fn radon_check(a: &[f64], b: &[f64], p: f64, q: f64) -> Result<bool> {
    let regime = radon_regime(p, q)?;
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_same_len(a, b)?;
    let n = a.len() as f64;
    let lhs = num::sum(a.iter().zip(b).map(|(&x, &y)| pow(x, p) / pow(y, q)));
    let rhs = pow(n, q + 1.0 - p) * pow(num::sum(a.iter().copied()), p)
        / pow(num::sum(b.iter().copied()), q);
    let direction = match regime {
        RadonRegime::Geq => Direction::Geq,
        RadonRegime::Leq => Direction::Leq,
        RadonRegime::Equal => Direction::Equal,
    };
    Ok(holds(direction, lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub rearrangement: bool,
    pub chebyshev: bool,
    pub power_mean: bool,
    pub am_gm: bool,
}

impl ClassicalReport {
    pub fn all(&self) -> bool {
        self.rearrangement && self.chebyshev && self.power_mean && self.am_gm
    }
}

/// Rearrangement (against a seeded random permutation of `b`), Chebyshev,
/// the power mean of `a` with exponent `pexp`, and uniform-weight AM-GM
/// on `a`. `a` and `b` must be ascending.
pub fn classical_suite(a: &[f64], b: &[f64], pexp: f64, seed: u64) -> Result<ClassicalReport> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_same_len(a, b)?;
    check_sorted("a", a)?;
    check_sorted("b", b)?;
    if pexp == 0.0 || !pexp.is_finite() {
        return Err(Error::invalid(format!("power-mean exponent must be finite and non-zero, got {pexp}")));
    }
    let n = a.len() as f64;

    let same = dot(a, b.iter().copied());
    let reversed = dot(a, b.iter().rev().copied());
    let mut shuffled = b.to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mixed = dot(a, shuffled.iter().copied());
    let rearrangement = geq(mixed, reversed) && geq(same, mixed);

    let mean_product = num::sum(a.iter().copied()) * num::sum(b.iter().copied()) / n;
    let chebyshev = geq(same, mean_product) && geq(mean_product, reversed);

    // M_p = (Σ aᵢ^p / n)^(1/p) against M_1: ≥ for p ≥ 1, ≤ for p < 0 or
    // p ∈ (0, 1]; p = 1 is both. Means rather than (Σ aᵢ^p)^(1/p) so that
    // exponents near 0 do not overflow.
    let lhs = pow(num::sum(a.iter().map(|&x| pow(x, pexp))) / n, 1.0 / pexp);
    let rhs = num::sum(a.iter().copied()) / n;
    let power_mean = match (pexp >= 1.0, pexp <= 1.0) {
        (true, true) => holds(Direction::Equal, lhs, rhs),
        (true, false) => holds(Direction::Geq, lhs, rhs),
        _ => holds(Direction::Leq, lhs, rhs),
    };

    let arithmetic = num::sum(a.iter().copied()) / n;
    let geometric = (num::sum(a.iter().map(|x| x.ln())) / n).exp();
    let am_gm = geq(arithmetic, geometric);

    Ok(ClassicalReport { rearrangement, chebyshev, power_mean, am_gm })
}

/// The one-step bounds obtained by summing rearrangement inequalities over
/// all cyclic shifts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStep {
    /// `Σ aᵢ^m/Dᵢ^β ≥ (nt−r)^(−1) Σ aᵢ^(m−p)/Dᵢ^(β−1)`.
    Lower,
    /// `Σ aᵢ^m/Dᵢ^β ≤ (nt−r)^(−1) Σ aᵢ^(m−p)/Dᵢ^(β−1)`.
    Upper,
    /// `Σ aᵢ^m/Dᵢ^β ≤ (nt−r) Σ aᵢ^(m+p)/Dᵢ^(β+1)`.
    Shifted,
}

impl ChainStep {
    pub fn direction(self) -> Direction {
        match self {
            ChainStep::Lower => Direction::Geq,
            ChainStep::Upper | ChainStep::Shifted => Direction::Leq,
        }
    }

    /// Whether `aᵢ^p` and the paired weights are ordered the way the step
    /// needs.
    pub fn applies(self, q: &ParamTuple) -> bool {
        let ParamTuple { m, p, beta: b, r, .. } = *q;
        match self {
            ChainStep::Lower => {
                b >= 1.0
                    && ((r >= 0.0 && p > 0.0 && m >= b * p)
                        || (r < 0.0 && p > 0.0 && m >= (b + 1.0) * p)
                        || (r >= 0.0 && p < 0.0 && m <= b * p)
                        || (r < 0.0 && p < 0.0 && m <= (b + 1.0) * p))
            }
            ChainStep::Upper => r <= 0.0 && b > 0.0 && ((p > 0.0 && m <= p) || (p < 0.0 && m >= p)),
            ChainStep::Shifted => {
                b <= -1.0 && r < 0.0 && ((m >= 0.0 && p >= 0.0) || (m <= 0.0 && p <= 0.0))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainStepSides {
    pub step: ChainStep,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Both sides of every chain step whose hypotheses `params` satisfy.
pub fn chain_step_sides(params: &ParamTuple, a: &PointVec) -> Result<Vec<ChainStepSides>> {
    params.validate()?;
    let steps: Vec<_> = [ChainStep::Lower, ChainStep::Upper, ChainStep::Shifted]
        .into_iter()
        .filter(|s| s.applies(params))
        .collect();
    if steps.is_empty() {
        return Err(Error::Regime(format!("no chain step applies to {params:?}")));
    }
    let bases = denominator_bases(params, a)?;
    let ParamTuple { m, p, beta: b, .. } = *params;
    let scale = params.nt_minus_r();
    let x = a.coords();
    let lhs = num::sum(x.iter().zip(&bases).map(|(&xi, &d)| pow(xi, m) / pow(d, b)));
    Ok(steps
        .into_iter()
        .map(|step| {
            let rhs = match step {
                ChainStep::Lower | ChainStep::Upper => {
                    num::sum(x.iter().zip(&bases).map(|(&xi, &d)| pow(xi, m - p) / pow(d, b - 1.0))) / scale
                }
                ChainStep::Shifted => {
                    scale * num::sum(x.iter().zip(&bases).map(|(&xi, &d)| pow(xi, m + p) / pow(d, b + 1.0)))
                }
            };
            ChainStepSides { step, lhs, rhs, holds: holds(step.direction(), lhs, rhs) }
        })
        .collect())
}

/// True iff every applicable chain step holds at `a`.
pub fn chain_step_check(params: &ParamTuple, a: &PointVec) -> Result<bool> {
    Ok(chain_step_sides(params, a)?.iter().all(|s| s.holds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radon_examples() {
        assert!(radon_check(&[1.0, 2.0], &[2.0, 1.0], 2.0, 1.0).unwrap());
        assert_eq!(radon_regime(0.5, -0.5).unwrap(), RadonRegime::Leq);
        assert!(radon_check(&[1.0, 2.0, 5.0], &[3.0, 0.5, 1.0], 0.5, -0.5).unwrap());
        // a/b constant with p = q + 1: equality, so both sides hold
        let a = [1.0, 2.0, 3.0];
        let b = [2.0, 4.0, 6.0];
        assert!(radon_check(&a, &b, 3.0, 2.0).unwrap());
        assert!(matches!(radon_check(&a, &b, 0.5, 1.0), Err(Error::Regime(_))));
        assert_eq!(radon_regime(1.0, 0.0).unwrap(), RadonRegime::Equal);
    }

    #[test]
    fn classical_examples() {
        let v = [1.0, 2.0, 3.0];
        assert_eq!(dot(&v, v.iter().copied()), 14.0);
        assert_eq!(dot(&v, v.iter().rev().copied()), 10.0);
        for seed in 0..20 {
            assert!(classical_suite(&v, &v, 2.0, seed).unwrap().all());
        }
        let c = [2.5; 4];
        for pexp in [-3.0, 0.5, 1.0, 4.0] {
            assert!(classical_suite(&c, &c, pexp, 0).unwrap().all());
        }
        assert!(matches!(classical_suite(&[2.0, 1.0], &[1.0, 2.0], 2.0, 0), Err(Error::Sort(_))));
        assert!(classical_suite(&v, &v, 0.0, 0).is_err());

        // n^(1/p) would overflow here
        let a = [0.05, 4.2, 5.5];
        assert!(classical_suite(&a, &a, 9e-4, 0).unwrap().power_mean);
    }

    #[test]
    fn chain_steps() {
        let nes = ParamTuple::nesbitt();
        let a = PointVec::new(vec![1.0, 2.0, 3.0], 1.0).unwrap();
        let sides = chain_step_sides(&nes, &a).unwrap();
        assert_eq!(sides.len(), 1);
        assert!((sides[0].lhs - 1.7).abs() < 1e-14);
        assert!((sides[0].rhs - 1.5).abs() < 1e-14);
        assert!(sides[0].holds);

        let u = PointVec::uniform(4, 1.3, 1.0).unwrap();
        let q = ParamTuple::new(4, 2.0, 1.0, 2.0, 1.0, 0.5).unwrap();
        let s = chain_step_sides(&q, &u).unwrap();
        assert!((s[0].lhs - s[0].rhs).abs() < 1e-12 * s[0].lhs);

        let shifted = ParamTuple::new(3, 1.0, 2.0, -2.0, 1.0, -1.0).unwrap();
        let a = PointVec::new(vec![0.3, 1.0, 2.0], 2.0).unwrap();
        assert!(chain_step_check(&shifted, &a).unwrap());

        let outside = ParamTuple::new(3, 1.0, 1.0, 0.5, 1.0, 1.0).unwrap();
        assert!(matches!(chain_step_check(&outside, &PointVec::uniform(3, 1.0, 1.0).unwrap()), Err(Error::Regime(_))));
    }
}
