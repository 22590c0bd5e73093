use nesbitt::zeta::{
    check_extremality, extremal_case, hurwitz_lerch, hurwitz_lerch_with_cap, weighted_zeta_sum, ExtremalCase,
    SimplexPoint, ZetaArgs, ZetaProblem,
};
use nesbitt::{Error, Exec};

#[test]
fn logarithm_closed_form() {
    for z in [0.1, 0.5, 0.9] {
        for tol in [1e-6, 1e-10, 1e-13] {
            let v = hurwitz_lerch(&ZetaArgs::new(z, 1.0, 1.0).unwrap(), tol).unwrap();
            let want = -(-z).ln_1p() / z;
            assert!((v - want).abs() <= tol, "z={z} tol={tol}: {v} vs {want}");
        }
    }
}

#[test]
fn basel_against_euler_maclaurin() {
    // partial sum to N plus 1/N − 1/(2N²) + 1/(6N³) − 1/(30N⁵)
    let n = 1000u32;
    let head: f64 = (1..n).rev().map(|k| 1.0 / (k as f64).powi(2)).sum();
    let nf = n as f64;
    let tail = 1.0 / nf + 1.0 / (2.0 * nf * nf) + 1.0 / (6.0 * nf.powi(3)) - 1.0 / (30.0 * nf.powi(5));
    let reference = head + tail;
    assert!((reference - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
    let v = hurwitz_lerch(&ZetaArgs::new(1.0, 2.0, 1.0).unwrap(), 1e-7).unwrap();
    assert!((v - reference).abs() < 1e-7);
}

#[test]
fn reported_tail_bounds_hold() {
    let args = ZetaArgs::new(1.0, 3.0, 0.5).unwrap();
    let coarse = hurwitz_lerch_with_cap(&args, 1e-4, 1_000_000).unwrap();
    let fine = hurwitz_lerch_with_cap(&args, 1e-12, 10_000_000).unwrap();
    assert!(coarse.tail_bound <= 0.5e-4);
    assert!(fine.value - coarse.value >= 0.0 && fine.value - coarse.value <= coarse.tail_bound + 1e-12);
    assert!(fine.terms > coarse.terms);
}

#[test]
fn errors() {
    assert!(matches!(ZetaArgs::new(1.0, 0.5, 1.0), Err(Error::Convergence(_))));
    let x = SimplexPoint::new(vec![0.5, 0.5]).unwrap();
    assert!(matches!(weighted_zeta_sum(&x, 0.5, 1.0, 1.0, 3.0, 1e-10), Err(Error::Domain(_))));
    assert!(matches!(extremal_case(1.0, 1.0, 0.5), Err(Error::Precondition(_))));
}

#[test]
fn uniform_point_is_extremal_in_every_certified_case() {
    let cases = [
        (2.0, 1.0, 2.0, ExtremalCase::MinAtUniform),
        (-2.0, -1.0, 0.5, ExtremalCase::MinAtUniform),
        (-0.5, -1.0, 0.5, ExtremalCase::MinAtUniform),
        (2.0, -1.0, 1.0, ExtremalCase::MaxAtUniform),
        (-2.0, 1.0, 2.0, ExtremalCase::MaxAtUniform),
        (-0.5, 1.0, 2.0, ExtremalCase::MaxAtUniform),
        (0.0, 1.0, 2.0, ExtremalCase::Constant),
    ];
    for (beta, r, alpha, want) in cases {
        for n in [2, 3, 5] {
            for z in [0.5, 0.9] {
                let prob = ZetaProblem { n, z, beta, a_n: alpha, r, alpha };
                let rep = check_extremality(&prob, 10_000, 99, 1e-10, 1e-13, Exec::default()).unwrap();
                assert_eq!(rep.case, want);
                assert_eq!(rep.violations, 0, "{prob:?}: worst excess {} at {:?}", rep.worst_excess, rep.worst_point);
            }
        }
    }
}

#[test]
fn offsets_above_the_infimum() {
    let prob = ZetaProblem { n: 3, z: 0.5, beta: 2.0, a_n: 3.5, r: -1.0, alpha: 1.0 };
    let rep = check_extremality(&prob, 2000, 5, 1e-10, 1e-13, Exec::default()).unwrap();
    assert_eq!(rep.case, ExtremalCase::MaxAtUniform);
    assert_eq!(rep.violations, 0);
    let below = ZetaProblem { a_n: 0.5, ..prob };
    assert!(check_extremality(&below, 10, 5, 1e-10, 1e-13, Exec::default()).is_err());
}
