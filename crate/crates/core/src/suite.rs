//! The acceptance fixture set: ten numbered criteria, each reduced to a
//! pass/fail outcome with a one-line detail. Shared by the `acceptance`
//! test target and the `suite` CLI command.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_power_form, classify_sum_form, Certificate, Direction, Theorem};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::expr::{lhs_sum, windowed_lhs, windowed_params, windowed_rhs};
use crate::extremum::{
    beta0_threshold, beta_threshold, sbeta_brute_force, sbeta_infimum, ExampleKernel, ExtremumOptions,
    ExtremumResult,
};
use crate::oracle::{
    chain_step_check, classical_suite, ChainStep, draw_params, radon_check, radon_regime, sample_point, soundness_sweep,
    verify_direction, Form, Status, SweepOptions, VerifyOptions,
};
use crate::params::ParamTuple;
use crate::point::PointVec;
use crate::zeta::{check_extremality, ExtremalCase, ZetaProblem};

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "Nesbitt reproduction"),
    (2, "kernel 3.3 minimum"),
    (3, "kernel 3.4 maximum"),
    (4, "beta0 threshold and kernel 3.5 maximum"),
    (5, "two-sided counterexamples (1.5, 1, 1.5, 1, -1)"),
    (6, "S_beta infimum table"),
    (7, "competition fixtures"),
    (8, "Hurwitz-Lerch extremality"),
    (9, "classifier soundness sweep"),
    (10, "classical suite and chain step"),
];

const SEED: u64 = 20_240_601;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} AC{} {} ({:.2}s): {}", self.id, self.name, self.seconds, self.detail)
    }
}

type Check = Result<(bool, String)>;

/// Run one criterion. Errors inside a criterion become a failing outcome.
pub fn run(id: u8, exec: Exec) -> Result<Outcome> {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map(|c| c.1)
        .ok_or_else(|| Error::invalid(format!("no criterion {id}; expected 1..=10")))?;
    let start = Instant::now();
    let res = match id {
        1 => ac1_nesbitt(exec),
        2 => ac2_example33(exec),
        3 => ac3_example34(exec),
        4 => ac4_example35(exec),
        5 => ac5_counterexample(exec),
        6 => ac6_sbeta(exec),
        7 => ac7_competition(exec),
        8 => ac8_zeta(exec),
        9 => ac9_sweep(exec),
        _ => ac10_classical(exec),
    };
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    Ok(Outcome { id, name: name.to_string(), passed, detail, seconds: start.elapsed().as_secs_f64() })
}

pub fn run_all(exec: Exec) -> Vec<Outcome> {
    CRITERIA.iter().map(|&(id, _)| run(id, exec).expect("known id")).collect()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn cert_has(cert: &Certificate, theorem: Theorem, tag: &str, direction: Direction) -> bool {
    cert.direction == direction && cert.has_case(theorem, tag)
}

fn verify(params: &ParamTuple, form: Form, trials: usize, exec: Exec) -> Result<bool> {
    let opts = VerifyOptions { trials, seed: SEED, exec, ..VerifyOptions::default() };
    Ok(verify_direction(params, form, &opts)?.status == Status::HoldsOnSamples)
}

fn ac1_nesbitt(exec: Exec) -> Check {
    let q = ParamTuple::nesbitt();
    let sum = classify_sum_form(&q)?;
    let certified = cert_has(&sum, Theorem::T32, "i.1", Direction::Geq);
    let opts = VerifyOptions { trials: 10_000, seed: SEED, exec, ..VerifyOptions::default() };
    let verdict = verify_direction(&q, Form::Sum, &opts)?;
    let holds = verdict.status == Status::HoldsOnSamples;
    let uniform = lhs_sum(&q, &PointVec::uniform(3, 1.0, 1.0)?)?;
    let at_uniform = close(uniform, 1.5, 1e-12);
    Ok((
        certified && holds && at_uniform,
        format!(
            "sum form {} [{}]; {} trials + {} probes: {:?}, min relative margin {:.3e}; uniform lhs = {uniform:.17}",
            sum.direction,
            sum.tags().join(","),
            verdict.trials,
            verdict.probes,
            verdict.status,
            verdict.margin_min
        ),
    ))
}

fn is_uniform(r: &ExtremumResult, tol: f64) -> bool {
    let mean = r.argpoint.iter().sum::<f64>() / r.argpoint.len() as f64;
    r.argpoint.iter().all(|&x| (x - mean).abs() <= tol)
}

fn extremum_check(kernel: ExampleKernel, exec: Exec, budget: Option<f64>) -> Check {
    let start = Instant::now();
    let opts = ExtremumOptions { exec, ..ExtremumOptions::default() };
    let r = kernel.extremize(1.0, &opts)?;
    let secs = start.elapsed().as_secs_f64();
    let want = kernel.expected(1.0)?;
    let ok = close(r.value, want, 1e-6) && is_uniform(&r, 1e-4) && budget.is_none_or(|b| secs < b);
    Ok((ok, format!("{:?} = {:.12} (closed form {want:.12}) at {:?} in {secs:.3}s", r.mode, r.value, r.argpoint)))
}

fn ac2_example33(exec: Exec) -> Check {
    extremum_check(ExampleKernel::Ex33, exec, Some(5.0))
}

fn ac3_example34(exec: Exec) -> Check {
    extremum_check(ExampleKernel::Ex34, exec, None)
}

fn ac4_example35(exec: Exec) -> Check {
    let b0 = beta0_threshold(1e-6)?;
    let b0_ok = close(b0, 0.588729, 1e-6);
    let k = ExampleKernel::Ex35 { beta: 0.5 };
    let r = k.extremize(1.0, &ExtremumOptions { exec, ..ExtremumOptions::default() })?;
    let want = 3.0 / 5f64.sqrt();
    let max_ok = close(r.value, want, 1e-6);
    Ok((b0_ok && max_ok, format!("beta0 = {b0:.9}; max at beta 0.5 = {:.12} (3/sqrt5 = {want:.12})", r.value)))
}

fn ac5_counterexample(exec: Exec) -> Check {
    let q = ParamTuple::new(3, 1.5, 1.0, 1.5, 1.0, -1.0)?;
    let mut detail = Vec::new();
    let mut ok = true;
    for (direction, below) in [(Direction::Geq, true), (Direction::Leq, false)] {
        let opts = VerifyOptions { trials: 10_000, seed: SEED, direction: Some(direction), exec, ..VerifyOptions::default() };
        let v = verify_direction(&q, Form::Power, &opts)?;
        let w = v.refutations.iter().find(|w| w.direction == direction);
        let found = match w {
            Some(w) if below => w.lhs < 0.375 - 1e-3,
            Some(w) => w.lhs > 0.375 + 1e-3,
            None => false,
        };
        ok &= found;
        match w {
            Some(w) => detail.push(format!("{direction}: lhs = {:.6} at {:?}", w.lhs, w.point)),
            None => detail.push(format!("{direction}: no witness")),
        }
    }
    Ok((ok, detail.join("; ")))
}

fn ac6_sbeta(exec: Exec) -> Check {
    let literal = |k: f64| ((k).ln() - (k - 1.0).ln()) / ((k - 1.0).ln() - (k - 2.0).ln());
    let (b3, b4) = (beta_threshold(3)?, beta_threshold(4)?);
    let mut ok = close(b3, literal(3.0), 1e-9)
        && close(b4, literal(4.0), 1e-9)
        && close(b3, 0.584963, 5e-7)
        && close(b4, 0.709511, 5e-7);
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for n in 3..=5 {
        for beta in [-1.0, 0.3, 0.6, 0.7, 1.0, 2.0] {
            let closed = sbeta_infimum(n, beta)?;
            let brute = sbeta_brute_force(n, beta, exec)?.value;
            let err = (closed - brute).abs();
            worst = worst.max(err);
            if err > 1e-6 {
                ok = false;
                bad.push(format!("n={n} beta={beta}: {closed} vs {brute}"));
            }
        }
    }
    Ok((ok, format!("beta3 = {b3:.9}, beta4 = {b4:.9}; 18 cells, max |closed - brute| = {worst:.2e} {}", bad.join("; "))))
}

/// One named fixture with its verdict and a short reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn fixture(name: &str, res: Check) -> Fixture {
    let (passed, detail) = res.unwrap_or_else(|e| (false, format!("error: {e}")));
    Fixture { name: name.to_string(), passed, detail }
}

/// `count` points drawn by `draw`, checking `lhs ≥ bound(point)`.
fn sampled_bound(
    q: &ParamTuple,
    count: usize,
    seed: u64,
    draw: impl Fn(&mut ChaCha8Rng) -> Vec<f64>,
    bound: impl Fn(&[f64]) -> f64,
) -> Result<(bool, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut margin = f64::INFINITY;
    for _ in 0..count {
        let a = draw(&mut rng);
        let lhs = lhs_sum(q, &PointVec::new(a.clone(), q.p)?)?;
        let rhs = bound(&a);
        margin = margin.min((lhs - rhs) / rhs.abs().max(1e-300));
    }
    Ok((margin >= -1e-10, margin))
}

fn positive<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| 10f64.powf(3.0 * (rng.random::<f64>() - 0.5))).collect()
}

/// Triangle sides from positive `x, y, z`: `(y+z, z+x, x+y)`.
fn triangle<R: Rng>(rng: &mut R) -> Vec<f64> {
    let v = positive(rng, 3);
    vec![v[1] + v[2], v[2] + v[0], v[0] + v[1]]
}

/// The fixtures behind criterion 7, individually.
pub fn competition_fixtures(exec: Exec) -> Vec<Fixture> {
    let mut out = Vec::new();

    out.push(fixture("triangle sides", (|| {
        let q = ParamTuple::new(3, 2.0, 1.0, 1.0, 1.0, 2.0)?;
        let cert = classify_power_form(&q)?;
        let at345 = lhs_sum(&q, &PointVec::new(vec![3.0, 4.0, 5.0], 1.0)?)?;
        let (held, margin) = sampled_bound(&q, 1000, SEED, triangle, |a| a.iter().sum())?;
        let ok = cert_has(&cert, Theorem::T31, "iii.3", Direction::Geq) && at345 == 18.0 && held;
        Ok((ok, format!("{} [{}]; (3,4,5) lhs = {at345}; 1000 triangles, min margin {margin:.3e}", cert.direction, cert.tags().join(","))))
    })()));

    out.push(fixture("28th IMO pre-selection", (|| {
        let mut ok = true;
        let mut notes = Vec::new();
        for m in [2.0, 3.0, 4.5] {
            let q = ParamTuple::new(3, m, 1.0, 1.0, 1.0, 1.0)?;
            let cert = classify_power_form(&q)?;
            ok &= cert_has(&cert, Theorem::T31, "iii.3", Direction::Geq);
            // the stated bound (2/3)^m S^(m−1) with 2S = a + b + c, on triangles
            let (held, margin) = sampled_bound(&q, 1000, SEED + m as u64, triangle, |a| {
                let big_s = a.iter().sum::<f64>() / 2.0;
                (2.0f64 / 3.0).powf(m) * big_s.powf(m - 1.0)
            })?;
            ok &= held && verify(&q, Form::Power, 1000, exec)?;
            notes.push(format!("m={m}: [{}] margin {margin:.3e}", cert.tags().join(",")));
        }
        Ok((ok, notes.join("; ")))
    })()));

    out.push(fixture("31st IMO pre-selection", (|| {
        let q = ParamTuple::new(4, 3.0, 1.0, 1.0, 1.0, 1.0)?;
        let cert = classify_sum_form(&q)?;
        // normalize to ab + bc + cd + da = 1
        let draw = |rng: &mut ChaCha8Rng| {
            let a = positive(rng, 4);
            let k = (a[0] * a[1] + a[1] * a[2] + a[2] * a[3] + a[3] * a[0]).sqrt();
            a.iter().map(|x| x / k).collect()
        };
        let (held, margin) = sampled_bound(&q, 1000, SEED, draw, |_| 1.0 / 3.0)?;
        let ok = cert_has(&cert, Theorem::T32, "i.1", Direction::Geq) && held && verify(&q, Form::Sum, 1000, exec)?;
        Ok((ok, format!("{} [{}]; 1000 points with ab+bc+cd+da = 1, min margin {margin:.3e}", cert.direction, cert.tags().join(","))))
    })()));

    out.push(fixture("IMO 1995", (|| {
        let q = ParamTuple::new(3, -2.0, -1.0, 1.0, 1.0, 1.0)?;
        let cert = classify_power_form(&q)?;
        let draw = |rng: &mut ChaCha8Rng| {
            let a = positive(rng, 3);
            let g = (a[0] * a[1] * a[2]).cbrt();
            a.iter().map(|x| x / g).collect()
        };
        let (held, margin) = sampled_bound(&q, 1000, SEED, draw, |_| 1.5)?;
        let ok = cert_has(&cert, Theorem::T31, "iii.3", Direction::Geq) && held && verify(&q, Form::Power, 1000, exec)?;
        Ok((ok, format!("{} [{}]; 1000 triples with abc = 1, min margin {margin:.3e}", cert.direction, cert.tags().join(","))))
    })()));

    out.push(fixture("Serbia 2005", (|| {
        let q = ParamTuple::new(3, 1.0, 1.0, 0.5, 1.0, 1.0)?;
        let cert = classify_power_form(&q)?;
        let (held, margin) = sampled_bound(&q, 1000, SEED, |rng| positive(rng, 3), |a| (1.5 * a.iter().sum::<f64>()).sqrt())?;
        let ok = cert_has(&cert, Theorem::T31, "iii.3", Direction::Geq) && held && verify(&q, Form::Power, 1000, exec)?;
        Ok((ok, format!("{} [{}]; min margin {margin:.3e}", cert.direction, cert.tags().join(","))))
    })()));

    out.push(fixture("Nesbitt", (|| {
        let q = ParamTuple::nesbitt();
        let cert = classify_sum_form(&q)?;
        let ok = cert_has(&cert, Theorem::T32, "i.1", Direction::Geq) && verify(&q, Form::Sum, 1000, exec)?;
        Ok((ok, format!("{} [{}]", cert.direction, cert.tags().join(","))))
    })()));

    out.push(fixture("cyclic windows", (|| {
        let mut ok = true;
        let mut notes = Vec::new();
        for (n, k, m, beta, t, r) in [(5, 2, 1.0, 1.0, 3.0, 1.0), (6, 3, 2.0, 1.0, 4.0, 1.0), (5, 2, 0.5, 0.5, 1.0, -1.0)] {
            let q = ParamTuple::new(n, m, 1.0, beta, t, r)?;
            let cert = classify_power_form(&windowed_params(&q, k))?;
            let mut margin = f64::INFINITY;
            for i in 0..1000u64 {
                let a = sample_point(n, SEED + i, 3.0)?;
                let lhs = windowed_lhs(&q, &a, k)?;
                let rhs = windowed_rhs(&q, a.s(), k)?;
                margin = margin.min(cert.direction.sign() * (lhs - rhs) / rhs.abs());
            }
            ok &= cert.direction.is_certified() && margin >= -1e-10;
            notes.push(format!("n={n} k={k}: {} margin {margin:.3e}", cert.direction));
        }
        Ok((ok, notes.join("; ")))
    })()));

    out
}

fn ac7_competition(exec: Exec) -> Check {
    let fx = competition_fixtures(exec);
    let ok = fx.iter().all(|f| f.passed);
    let failed: Vec<_> = fx.iter().filter(|f| !f.passed).map(|f| format!("{}: {}", f.name, f.detail)).collect();
    let detail = if failed.is_empty() { format!("{} fixtures passed", fx.len()) } else { failed.join("; ") };
    Ok((ok, detail))
}

fn ac8_zeta(exec: Exec) -> Check {
    let base = ZetaProblem { n: 3, z: 0.5, beta: 2.0, a_n: 2.0, r: 1.0, alpha: 2.0 };
    let mut ok = true;
    let mut notes = Vec::new();
    for (prob, want) in [(base, ExtremalCase::MinAtUniform), (ZetaProblem { beta: -0.5, ..base }, ExtremalCase::MaxAtUniform)] {
        let rep = check_extremality(&prob, 10_000, SEED, 1e-10, 1e-13, exec)?;
        ok &= rep.case == want && rep.violations == 0;
        notes.push(format!("beta={}: {} uniform {:.12}, worst excess {:.3e}", prob.beta, rep.case, rep.uniform, rep.worst_excess));
    }
    Ok((ok, notes.join("; ")))
}

fn ac9_sweep(exec: Exec) -> Check {
    let start = Instant::now();
    let rep = soundness_sweep(&SweepOptions { seed: SEED, exec, ..SweepOptions::default() });
    let secs = start.elapsed().as_secs_f64();
    let ok = rep.failures.is_empty() && secs < 120.0;
    let mut detail = format!(
        "{} tuples: {} certified, {} unknown, {} verified, {} unsamplable, {} failures in {secs:.1}s",
        rep.tuples,
        rep.certified,
        rep.unknown,
        rep.verified,
        rep.infeasible,
        rep.failures.len()
    );
    if let Some(f) = rep.failures.first() {
        detail.push_str(&format!("; first: {:?} {:?} {}", f.params, f.form, f.reason));
    }
    Ok((ok, detail))
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn ac10_classical(exec: Exec) -> Check {
    let results = exec.map(10_000, |i| -> Result<(bool, bool)> {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xC1A5_51C0 ^ i as u64);
        let n = rng.random_range(2..=10);
        let a = sorted(positive(&mut rng, n));
        let b = sorted(positive(&mut rng, n));
        let pexp = loop {
            let e = rng.random_range(-3.0..3.0);
            if e != 0.0 {
                break e;
            }
        };
        let classical = classical_suite(&a, &b, pexp, i as u64)?.all();
        let (p, q) = loop {
            let (p, q) = (rng.random_range(-4.0..4.0), rng.random_range(-3.0..3.0));
            if radon_regime(p, q).is_ok() {
                break (p, q);
            }
        };
        Ok((classical, radon_check(&a, &b, p, q)?))
    });
    let (mut classical_fail, mut radon_fail) = (0, 0);
    for r in results {
        let (c, rd) = r?;
        classical_fail += usize::from(!c);
        radon_fail += usize::from(!rd);
    }

    let chain = exec.map(1000, |i| -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xC4A1_0000 ^ i as u64);
        let steps = [ChainStep::Lower, ChainStep::Upper, ChainStep::Shifted];
        for attempt in 0u64.. {
            let q = draw_params(&mut rng);
            if !steps.iter().any(|s| s.applies(&q)) {
                continue;
            }
            for j in 0..100u64 {
                let seed = (i as u64) << 32 | attempt << 8 | j;
                let Ok(a) = sample_point(q.n, seed, 3.0).and_then(|a| PointVec::new(a.coords().to_vec(), q.p)) else {
                    continue;
                };
                if let Ok(holds) = chain_step_check(&q, &a) {
                    return Ok(holds);
                }
            }
        }
        unreachable!()
    });
    let mut chain_fail = 0;
    for c in chain {
        chain_fail += usize::from(!c?);
    }
    let ok = classical_fail == 0 && radon_fail == 0 && chain_fail == 0;
    Ok((
        ok,
        format!("10000 instances: {classical_fail} classical and {radon_fail} Radon failures; 1000 chain-step instances: {chain_fail} failures"),
    ))
}
