//! Sequential against rayon-parallel execution for the three heavy loops.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use nesbitt::extremum::sbeta_brute_force;
use nesbitt::oracle::{soundness_sweep, verify_direction, Form, SweepOptions, VerifyOptions};
use nesbitt::{Exec, ParamTuple};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_10k");
    let q = ParamTuple::new(4, 2.0, 1.0, 1.5, 1.0, 0.5).unwrap();
    for (name, exec) in MODES {
        let opts = VerifyOptions { trials: 10_000, exec, ..VerifyOptions::default() };
        g.bench_function(name, |b| b.iter(|| verify_direction(black_box(&q), Form::Sum, &opts).unwrap()));
    }
    g.finish();
}

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep_200x200");
    g.sample_size(10);
    for (name, exec) in MODES {
        let opts = SweepOptions { tuples: 200, trials: 200, exec, ..SweepOptions::default() };
        g.bench_function(name, |b| b.iter(|| soundness_sweep(black_box(&opts))));
    }
    g.finish();
}

fn brute(c: &mut Criterion) {
    let mut g = c.benchmark_group("sbeta_brute_n4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| sbeta_brute_force(4, black_box(0.7), exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, verify, sweep, brute);
criterion_main!(benches);
