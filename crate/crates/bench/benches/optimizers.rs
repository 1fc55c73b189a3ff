use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use optkit::optimizers::{ExponentialSchedule, Lbfgs, SimulatedAnnealing, Sgd, UpdatePolicy};
use optkit::problems::{CombinedRegression, Rosenbrock, SeparateRegression};
use optkit::{full_function, Coordinates};
use optkit_benches::regression;

fn rosenbrock_sa(c: &mut Criterion) {
    c.bench_function("rosenbrock_sa_100k", |b| {
        b.iter(|| {
            let mut f = full_function!(Rosenbrock::<f64>::new());
            let mut x = Rosenbrock::<f64>::initial();
            SimulatedAnnealing::new(ExponentialSchedule::default(), 100_000, 10_000.0, 1000, 100, 0.0)
                .optimize(&mut f, &mut x, &mut [])
                .unwrap()
        })
    });
}

fn linreg_lbfgs(c: &mut Criterion) {
    let mut group = c.benchmark_group("linreg_lbfgs_10");
    let lbfgs = Lbfgs {
        max_iterations: 10,
        ..Lbfgs::default()
    };
    group.bench_function("combined", |b| {
        b.iter(|| {
            let mut f = full_function!(CombinedRegression(regression(1)));
            let mut x = Coordinates::zeros(100, 1);
            lbfgs.clone().optimize(&mut f, &mut x, &mut []).unwrap()
        })
    });
    group.bench_function("separate", |b| {
        b.iter(|| {
            let mut f = full_function!(SeparateRegression(regression(1)));
            let mut x = Coordinates::zeros(100, 1);
            lbfgs.clone().optimize(&mut f, &mut x, &mut []).unwrap()
        })
    });
    group.finish();
}

fn sgd_epoch(c: &mut Criterion) {
    let mut group = c.benchmark_group("sgd_one_epoch");
    for policy in [UpdatePolicy::Vanilla, UpdatePolicy::adam(), UpdatePolicy::smorms3(), UpdatePolicy::momentum()] {
        group.bench_with_input(BenchmarkId::from_parameter(policy.name()), &policy, |b, &policy| {
            b.iter(|| {
                let mut f = full_function!(regression(2));
                let mut x = Coordinates::zeros(100, 1);
                Sgd::new(policy.default_step_size(), 32, 32, 0.0, true, policy)
                    .optimize(&mut f, &mut x, &mut [])
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn evaluate_with_gradient(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_with_gradient");
    let theta = Coordinates::filled(100, 1, 0.1);
    let mut combined = full_function!(CombinedRegression(regression(3)));
    let mut separate = full_function!(SeparateRegression(regression(3)));
    let mut g = theta.zeros_like();
    group.bench_function("combined", |b| {
        b.iter(|| combined.evaluate_with_gradient(black_box(&theta), &mut g).unwrap())
    });
    group.bench_function("separate", |b| {
        b.iter(|| separate.evaluate_with_gradient(black_box(&theta), &mut g).unwrap())
    });
    group.finish();
}

criterion_group!(benches, rosenbrock_sa, linreg_lbfgs, sgd_epoch, evaluate_with_gradient);
criterion_main!(benches);
