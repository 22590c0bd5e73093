//! Seeded randomized verification of certified directions, counterexample
//! search, and the classical reference inequalities.
//!
//! Every trial `i` draws from its own generator seeded with `seed + i`, so a
//! [`Verdict`] is a pure function of its inputs whether trials run
//! sequentially or in parallel.

mod classical;
mod sweep;

pub use classical::{
    chain_step_check, chain_step_sides, classical_suite, radon_check, radon_regime, ChainStep,
    ChainStepSides, ClassicalReport, RadonRegime,
};
pub use sweep::{draw_params, soundness_sweep, SweepFailure, SweepOptions, SweepReport};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_power_form, classify_sum_form, Direction};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expr::{lhs_sum, rhs_power_form, rhs_sum_form};
use crate::params::ParamTuple;
use crate::point::PointVec;

pub const DEFAULT_REL_TOL: f64 = 1.0e-10;
pub const ABS_FLOOR: f64 = 1.0e-14;
/// Per-trial decade widths are log-uniform in this range.
pub const DECADE_RANGE: (f64, f64) = (0.01, 8.0);
pub const PILOT_DRAWS: usize = 1000;
/// Minimum feasible fraction of pilot draws.
pub const MIN_FEASIBLE_FRACTION: f64 = 0.01;
pub const MAX_ATTEMPTS: usize = 10_000;
pub const PROBE_EPS: [f64; 6] = [1.0e-1, 1.0e-2, 1.0e-3, 1.0e-4, 1.0e-5, 1.0e-6];

const PILOT_SALT: u64 = 0x5851_f42d_4c95_7f2d;

/// Which right-hand side the LHS is compared with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Form {
    Power,
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    HoldsOnSamples,
    Counterexample,
    DegenerateEquality,
}

/// One evaluated point. `slack` is `(lhs − rhs)·sign` for `GEQ`/`LEQ` and
/// `−|lhs − rhs|` for `EQUAL`; negative means the direction is violated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Vec<f64>,
    pub direction: Direction,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl Witness {
    /// Violation beyond `max(rel_tol·|rhs|, ABS_FLOOR)`.
    pub fn violates(&self, rel_tol: f64) -> bool {
        self.slack < -threshold(self.rhs, rel_tol)
    }

    pub fn relative_slack(&self) -> f64 {
        self.slack / self.rhs.abs().max(ABS_FLOOR)
    }
}

fn threshold(rhs: f64, rel_tol: f64) -> f64 {
    (rel_tol * rhs.abs()).max(ABS_FLOOR)
}

fn slack(direction: Direction, lhs: f64, rhs: f64) -> f64 {
    match direction {
        Direction::Geq => lhs - rhs,
        Direction::Leq => rhs - lhs,
        _ => -(lhs - rhs).abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    pub rel_tol: f64,
    /// Test this direction instead of the certified one.
    pub direction: Option<Direction>,
    /// Add the `(ε,…,ε,1,…,1)` boundary probes.
    pub probes: bool,
    pub exec: Exec,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            trials: 1000,
            seed: 0,
            rel_tol: DEFAULT_REL_TOL,
            direction: None,
            probes: true,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub params: ParamTuple,
    pub form: Form,
    /// What the classifier certified for this form.
    pub certified: Direction,
    /// The directions that were checked against the samples.
    pub tested: Vec<Direction>,
    pub trials: usize,
    pub probes: usize,
    /// Trials that found no feasible point within the attempt cap.
    pub skipped: usize,
    /// Worst violation overall; present iff `status` is `COUNTEREXAMPLE`.
    pub witness: Option<Witness>,
    /// Worst violation of each tested direction that was violated.
    pub refutations: Vec<Witness>,
    /// Smallest relative slack observed over all tested directions.
    pub margin_min: f64,
}

fn log_uniform_coords<R: Rng>(rng: &mut R, n: usize, decades: f64) -> Vec<f64> {
    (0..n).map(|_| 10f64.powf(decades * (rng.random::<f64>() - 0.5))).collect()
}

/// A point with coordinates log-uniform over `[10^(−decades/2), 10^(decades/2)]`,
/// with powers taken for `p = 1`; use [`PointVec::with_exponent`] to change.
pub fn sample_point(n: usize, seed: u64, decades: f64) -> Result<PointVec> {
    if n < 2 || !(decades >= 0.0) || !decades.is_finite() {
        return Err(Error::invalid(format!("need n ≥ 2 and finite decades ≥ 0, got {n}, {decades}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    PointVec::new(log_uniform_coords(&mut rng, n, decades), 1.0)
}

/// Coordinates with a per-draw decade width, log-uniform in [`DECADE_RANGE`].
fn draw_mixed<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let (lo, hi) = DECADE_RANGE;
    let decades = (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp();
    log_uniform_coords(rng, n, decades)
}

fn rhs(params: &ParamTuple, form: Form, a: &PointVec) -> Result<f64> {
    match form {
        Form::Power => rhs_power_form(params, a),
        Form::Sum => rhs_sum_form(params, a),
    }
}

/// `(lhs, rhs)` at a point, or `None` when it is infeasible or overflows.
fn sides(params: &ParamTuple, form: Form, coords: &[f64]) -> Option<(f64, f64)> {
    let a = PointVec::new(coords.to_vec(), params.p).ok()?;
    let lhs = lhs_sum(params, &a).ok()?;
    let rhs = rhs(params, form, &a).ok()?;
    (lhs.is_finite() && rhs.is_finite()).then_some((lhs, rhs))
}

/// Fraction of plain draws that satisfy the domain condition.
pub fn feasible_fraction(params: &ParamTuple, seed: u64, draws: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ PILOT_SALT);
    let ok = (0..draws)
        .filter(|_| {
            let coords = draw_mixed(&mut rng, params.n);
            PointVec::new(coords, params.p).is_ok_and(|a| lhs_sum(params, &a).is_ok())
        })
        .count();
    ok as f64 / draws.max(1) as f64
}

/// `(ε,…,ε,1,…,1)` for every `ε` in [`PROBE_EPS`] and every split.
pub fn boundary_probes(n: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(PROBE_EPS.len() * (n - 1));
    for eps in PROBE_EPS {
        for k in 1..n {
            let mut v = vec![1.0; n];
            v[..k].fill(eps);
            out.push(v);
        }
    }
    out
}

struct Sample {
    coords: Vec<f64>,
    lhs: f64,
    rhs: f64,
}

fn trial(params: &ParamTuple, form: Form, seed: u64, i: usize) -> Option<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
    for _ in 0..MAX_ATTEMPTS {
        let coords = draw_mixed(&mut rng, params.n);
        if let Some((lhs, rhs)) = sides(params, form, &coords) {
            return Some(Sample { coords, lhs, rhs });
        }
    }
    None
}

fn certified_direction(params: &ParamTuple, form: Form) -> Result<Direction> {
    Ok(match form {
        Form::Power => classify_power_form(params)?.direction,
        Form::Sum => classify_sum_form(params)?.direction,
    })
}

/// Sample feasible points and check the certified (or forced) direction.
///
/// `UNKNOWN` certificates are probed in both directions; `EQUAL` ones are
/// checked for `|lhs − rhs|` within tolerance.
pub fn verify_direction(params: &ParamTuple, form: Form, opts: &VerifyOptions) -> Result<Verdict> {
    params.validate()?;
    if opts.trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    if !(opts.rel_tol >= 0.0) {
        return Err(Error::invalid("rel_tol must be non-negative"));
    }
    let certified = certified_direction(params, form)?;
    let tested = match (opts.direction, certified) {
        (Some(Direction::Unknown), _) | (None, Direction::Unknown) => vec![Direction::Geq, Direction::Leq],
        (Some(d), _) | (None, d) => vec![d],
    };

    let fraction = feasible_fraction(params, opts.seed, PILOT_DRAWS);
    if fraction < MIN_FEASIBLE_FRACTION {
        return Err(Error::InfeasibleSampling {
            feasible: (fraction * PILOT_DRAWS as f64).round() as usize,
            draws: PILOT_DRAWS,
        });
    }

    let samples = opts.exec.map(opts.trials, |i| trial(params, form, opts.seed, i));
    let skipped = samples.iter().filter(|s| s.is_none()).count();
    let mut all: Vec<Sample> = samples.into_iter().flatten().collect();
    let probes = if opts.probes {
        let pts = boundary_probes(params.n);
        let found = opts.exec.map_slice(&pts, |c| {
            sides(params, form, c).map(|(lhs, rhs)| Sample { coords: c.clone(), lhs, rhs })
        });
        let before = all.len();
        all.extend(found.into_iter().flatten());
        all.len() - before
    } else {
        0
    };

    let mut margin_min = f64::INFINITY;
    let mut refutations: Vec<Witness> = Vec::new();
    for &d in &tested {
        let mut worst: Option<Witness> = None;
        for s in &all {
            let w = Witness { point: s.coords.clone(), direction: d, lhs: s.lhs, rhs: s.rhs, slack: slack(d, s.lhs, s.rhs) };
            margin_min = margin_min.min(w.relative_slack());
            if w.violates(opts.rel_tol)
                && worst.as_ref().map_or(true, |b| w.relative_slack() < b.relative_slack())
            {
                worst = Some(w);
            }
        }
        refutations.extend(worst);
    }

    let witness = refutations
        .iter()
        .min_by(|a, b| a.relative_slack().total_cmp(&b.relative_slack()))
        .cloned();
    let status = match (&witness, tested.as_slice()) {
        (Some(_), _) => Status::Counterexample,
        (None, [Direction::Equal]) => Status::DegenerateEquality,
        (None, _) => Status::HoldsOnSamples,
    };
    Ok(Verdict {
        status,
        params: *params,
        form,
        certified,
        tested,
        trials: opts.trials,
        probes,
        skipped,
        witness,
        refutations,
        margin_min,
    })
}

/// Re-evaluate a stored point; deterministic, so a saved witness replays
/// to the identical slack.
pub fn replay(params: &ParamTuple, form: Form, direction: Direction, point: &[f64]) -> Result<Witness> {
    params.validate()?;
    let a = PointVec::new(point.to_vec(), params.p)?;
    let lhs = lhs_sum(params, &a)?;
    let rhs = rhs(params, form, &a)?;
    Ok(Witness { point: point.to_vec(), direction, lhs, rhs, slack: slack(direction, lhs, rhs) })
}
