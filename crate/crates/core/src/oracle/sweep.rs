//! Random parameter sweep: every certificate the classifier emits must
//! survive sampling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{verify_direction, Form, Status, VerifyOptions, Witness, DEFAULT_REL_TOL};
use crate::classify::{classify_all, Direction};
use crate::error::Error;
use crate::exec::Exec;
use crate::params::ParamTuple;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepOptions {
    pub tuples: usize,
    pub trials: usize,
    pub seed: u64,
    pub rel_tol: f64,
    pub exec: Exec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { tuples: 10_000, trials: 1000, seed: 0, rel_tol: DEFAULT_REL_TOL, exec: Exec::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFailure {
    pub params: ParamTuple,
    pub form: Option<Form>,
    pub reason: String,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct SweepReport {
    pub tuples: usize,
    /// Certificates with a GEQ, LEQ or EQUAL direction.
    pub certified: usize,
    pub unknown: usize,
    /// Certified comparisons whose feasible region was too thin to sample.
    pub infeasible: usize,
    pub verified: usize,
    pub failures: Vec<SweepFailure>,
}

/// Value with magnitude log-uniform in `[1e−2, 4]`, random sign, snapped to
/// a multiple of 1/2 or to 0 some of the time so boundary cases get hit.
fn draw_value<R: Rng>(rng: &mut R, signed: bool) -> f64 {
    let u: f64 = rng.random();
    if u < 0.10 {
        return 0.0;
    }
    let mag = (0.01f64.ln() + rng.random::<f64>() * (4f64.ln() - 0.01f64.ln())).exp();
    let mag = if u < 0.45 { ((2.0 * mag).round() / 2.0).max(0.5) } else { mag };
    if signed && rng.random::<bool>() {
        -mag
    } else {
        mag
    }
}

/// A valid random tuple; `m` is tied to `(β+1)p` or `βp` some of the time.
pub fn draw_params<R: Rng>(rng: &mut R) -> ParamTuple {
    loop {
        let n = rng.random_range(2..=8);
        let p = draw_value(rng, true);
        let beta = draw_value(rng, true);
        let u: f64 = rng.random();
        let m = if u < 0.2 {
            (beta + 1.0) * p
        } else if u < 0.3 {
            beta * p
        } else {
            draw_value(rng, true)
        };
        let t = draw_value(rng, false);
        let r = draw_value(rng, true);
        if let Ok(q) = ParamTuple::new(n, m, p, beta, t, r) {
            return q;
        }
    }
}

fn check_tuple(index: usize, opts: &SweepOptions) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(index as u64));
    let params = draw_params(&mut rng);
    let mut report = SweepReport { tuples: 1, ..SweepReport::default() };
    let cls = match classify_all(&params) {
        Ok(c) => c,
        Err(e) => {
            report.failures.push(SweepFailure { params, form: None, reason: e.to_string(), witness: None });
            return report;
        }
    };
    let forms = cls.power.map(|c| (Form::Power, c)).into_iter().chain([(Form::Sum, cls.sum)]);
    for (form, cert) in forms {
        if cert.direction == Direction::Unknown {
            report.unknown += 1;
            continue;
        }
        report.certified += 1;
        let vo = VerifyOptions {
            trials: opts.trials,
            seed: rng.random(),
            rel_tol: opts.rel_tol,
            direction: None,
            probes: true,
            exec: Exec::Sequential,
        };
        match verify_direction(&params, form, &vo) {
            Ok(v) if v.status == Status::Counterexample => report.failures.push(SweepFailure {
                params,
                form: Some(form),
                reason: format!("{} violated; cases {:?}", cert.direction, cert.tags()),
                witness: v.witness,
            }),
            Ok(_) => report.verified += 1,
            Err(Error::InfeasibleSampling { .. }) => report.infeasible += 1,
            Err(e) => report.failures.push(SweepFailure { params, form: Some(form), reason: e.to_string(), witness: None }),
        }
    }
    report
}

/// Draw `tuples` parameter tuples, classify each and verify every
/// certified comparison on `trials` points plus boundary probes.
pub fn soundness_sweep(opts: &SweepOptions) -> SweepReport {
    let parts = opts.exec.map(opts.tuples, |i| check_tuple(i, opts));
    parts.into_iter().fold(SweepReport::default(), |mut acc, r| {
        acc.tuples += r.tuples;
        acc.certified += r.certified;
        acc.unknown += r.unknown;
        acc.infeasible += r.infeasible;
        acc.verified += r.verified;
        acc.failures.extend(r.failures);
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_is_clean_and_deterministic() {
        let opts = SweepOptions { tuples: 300, trials: 200, seed: 42, ..SweepOptions::default() };
        let a = soundness_sweep(&opts);
        assert!(a.failures.is_empty(), "{:#?}", a.failures);
        assert!(a.verified > 100);
        let b = soundness_sweep(&SweepOptions { exec: Exec::Sequential, ..opts });
        assert_eq!(a, b);
    }
}
