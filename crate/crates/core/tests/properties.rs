use nesbitt::extremum::{kernel_value, second_derivative};
use nesbitt::zeta::{hurwitz_lerch, termwise_sides, SimplexPoint, ZetaArgs};
use nesbitt::{critical_roots, evaluate, lhs_sum, windowed_lhs, windowed_rhs, ParabolaKernel, ParamTuple, PointVec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn params() -> impl Strategy<Value = ParamTuple> {
    (2usize..7, -3.0..3.0f64, -2.5..2.5f64, -3.0..3.0f64, 0.2..3.0f64, -3.0..3.0f64)
        .prop_filter_map("invalid tuple", |(n, m, p, beta, t, r)| {
            (p.abs() > 0.05).then(|| ParamTuple::new(n, m, p, beta, t, r).ok()).flatten()
        })
}

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05..20.0f64, n)
}

fn with_point() -> impl Strategy<Value = (ParamTuple, Vec<f64>)> {
    params().prop_flat_map(|q| (Just(q), coords(q.n)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 400, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn scaling_covariance((q, a) in with_point(), lambda in 0.1..10.0f64) {
        let x = PointVec::new(a.clone(), q.p).unwrap();
        let y = PointVec::new(a.iter().map(|v| v * lambda).collect(), q.p).unwrap();
        let (Ok(ex), Ok(ey)) = (evaluate(&q, &x), evaluate(&q, &y)) else { return Ok(()) };
        prop_assume!(!ex.near_singular && !ey.near_singular);
        let bases_ok = x.powers().iter().all(|&v| q.t * x.s() - q.r * v > 1e-6 * q.t.max(1.0) * x.s());
        prop_assume!(bases_ok);
        let f = lambda.powf(q.m - q.beta * q.p);
        prop_assert!(close(ey.lhs, f * ex.lhs, 1e-9), "{} vs {}", ey.lhs, f * ex.lhs);
        prop_assert!(close(ey.rhs_sum, f * ex.rhs_sum, 1e-9));
        prop_assert!(close(ey.rhs_power.unwrap(), f * ex.rhs_power.unwrap(), 1e-9));
    }

    #[test]
    fn permutation_invariance((q, a) in with_point(), rot in 0usize..7) {
        let x = PointVec::new(a.clone(), q.p).unwrap();
        let mut b = a.clone();
        b.reverse();
        let k = rot % b.len();
        b.rotate_left(k);
        let y = PointVec::new(b, q.p).unwrap();
        if let (Ok(u), Ok(v)) = (lhs_sum(&q, &x), lhs_sum(&q, &y)) {
            prop_assert!(close(u, v, 1e-12), "{u} vs {v}");
        }
    }

    #[test]
    fn uniform_point_is_an_equality(q in params(), c in 0.1..5.0f64) {
        let a = PointVec::uniform(q.n, c, q.p).unwrap();
        if let Ok(e) = evaluate(&q, &a) {
            prop_assert!(close(e.lhs, e.rhs_sum, 1e-12), "{e:?}");
            prop_assert!(close(e.lhs, e.rhs_power.unwrap(), 1e-12), "{e:?}");
        }
    }

    #[test]
    fn window_of_one_is_the_plain_sum((q, a) in with_point()) {
        let x = PointVec::new(a, q.p).unwrap();
        let plain = ParamTuple { m: q.m * q.p, ..q };
        if let (Ok(w), Ok(l)) = (windowed_lhs(&q, &x, 1), lhs_sum(&plain, &x)) {
            prop_assert!(close(w, l, 1e-12), "{w} vs {l}");
            let rw = windowed_rhs(&q, x.s(), 1).unwrap();
            let rp = evaluate(&plain, &x).unwrap().rhs_power.unwrap();
            prop_assert!(close(rw, rp, 1e-12), "{rw} vs {rp}");
        }
    }

    #[test]
    fn roots_are_ordered_zeros(q in params()) {
        let Ok(Some(roots)) = critical_roots(&q) else { return Ok(()) };
        prop_assert!(roots.x1 < roots.x2);
        let k = ParabolaKernel::new(&q).unwrap();
        let scale = k.linear.abs().max(k.radicand.sqrt()).max(1.0);
        for y in [roots.x1, roots.x2] {
            prop_assert!(k.eval(y).abs() <= 1e-10 * scale * scale.max(y.abs()), "f({y}) = {}", k.eval(y));
        }
    }

    #[test]
    fn second_derivative_matches_differences(q in params(), frac in 0.02..0.98f64, regime in 0u8..3) {
        let q = match regime {
            0 => ParamTuple { beta: -1.0, ..q },
            1 => ParamTuple { r: 0.0, ..q },
            _ => q,
        };
        let s = 1.0;
        let end = if q.r <= q.t { s } else { q.t * s / q.r };
        let x = frac * end;
        let h = (1e-5 * x).max(1e-7);
        let g = |v: f64| kernel_value(&q, s, v);
        let fd = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
        let d = second_derivative(&q, s, x);
        prop_assume!(fd.is_finite() && d.is_finite());
        // near an inflection both are dominated by rounding in g
        prop_assume!(d.abs() > 1e-3 * g(x).abs() / (x * x));
        // rounding in the three evaluations of g, amplified by 1/h²
        let noise = 4.0 * f64::EPSILON * (g(x - h).abs() + 2.0 * g(x).abs() + g(x + h).abs()) / (h * h);
        prop_assert!((fd - d).abs() <= 1e-4 * d.abs() + noise, "x = {x}: fd {fd} vs closed {d}");
    }

    #[test]
    fn zeta_truncation_is_honest(z in 0.05..0.95f64, beta in -2.0..3.0f64, a in 0.1..5.0f64, tol_exp in 3i32..12) {
        let args = ZetaArgs::new(z, beta, a).unwrap();
        let tol = 10f64.powi(-tol_exp);
        let coarse = hurwitz_lerch(&args, tol).unwrap();
        let fine = hurwitz_lerch(&args, tol / 2.0).unwrap();
        prop_assert!((coarse - fine).abs() <= tol, "{coarse} vs {fine}");
    }

    #[test]
    fn zeta_termwise_relation(seed in any::<u64>(), n in 2usize..6, beta in -3.0..3.0f64, r in -2.0..2.0f64, a in 0.1..4.0f64) {
        use nesbitt::zeta::{extremal_case, ExtremalCase};
        prop_assume!(a > r && a - r > 1e-3);
        let Ok(case) = extremal_case(beta, r, a) else { return Ok(()) };
        let sign = match case {
            ExtremalCase::MinAtUniform => 1.0,
            ExtremalCase::MaxAtUniform => -1.0,
            _ => return Ok(()),
        };
        let x = SimplexPoint::sample(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        for j in 0..=50 {
            let (lhs, rhs) = termwise_sides(&x, j, a, r, beta);
            prop_assert!(sign * (lhs - rhs) >= -1e-12 * rhs.abs(), "{case} j={j}: {lhs} vs {rhs}");
        }
    }
}
