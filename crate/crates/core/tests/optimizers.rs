mod common;

use optkit::callbacks::EventKind;
use optkit::function::{
    Evaluate, NumFeatures, NumFunctions, Objective, PartialGradient, SeparableEvaluate, SeparableGradient,
};
use optkit::numerics::{Coordinates, SparseGradient};
use optkit::optimizers::{
    acceptance_probability, metropolis_accept, AugmentedLagrangian, CoordinateDescent, CoordinateSelection,
    ExponentialSchedule, GradientDescent, GridSearch, Lbfgs, PolicyState, SimulatedAnnealing, Sgd, UpdatePolicy,
};
use optkit::problems::{ConstrainedQuadratic, Rosenbrock, Sphere};
use optkit::{full_function, Termination};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::Recorder;

fn point(values: &[f64]) -> Coordinates<f64> {
    Coordinates::from_slice(values)
}

fn relative(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

// ---- gradient descent ----

#[test]
fn gd_single_step_on_sphere() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[1.0, 1.0]);
    let report = GradientDescent::new(0.01, 1, 0.0).optimize(&mut f, &mut x, &mut []).unwrap();
    assert_eq!(x.as_slice(), &[0.98, 0.98]);
    assert_eq!(report.iterations, 1);
    assert_eq!(report.termination, Termination::MaxIterations);
}

#[test]
fn gd_matches_closed_form_after_k_steps() {
    for k in [2, 5, 17, 100] {
        let mut f = full_function!(Sphere::<f64>::new(2));
        let mut x = point(&[1.0, 1.0]);
        GradientDescent::new(0.01, k, 0.0).optimize(&mut f, &mut x, &mut []).unwrap();
        let expected = 0.98f64.powi(k as i32);
        assert!(relative(x[0], expected) < 1e-12 && relative(x[1], expected) < 1e-12, "k={k}");
    }
}

#[test]
fn gd_is_monotone_on_sphere() {
    let mut f = full_function!(Sphere::<f64>::new(3));
    let mut x = point(&[3.0, -2.0, 0.5]);
    let mut log = Recorder::new();
    let report = GradientDescent::new(0.3, 10_000, 1e-8)
        .optimize(&mut f, &mut x, &mut [&mut log])
        .unwrap();
    assert_eq!(report.termination, Termination::Converged);
    let objectives: Vec<f64> = log.of(EventKind::Evaluate).map(|r| r.value.unwrap()).collect();
    assert!(objectives.len() > 2);
    assert!(objectives.windows(2).all(|w| w[1] < w[0]));
}

#[test]
fn gd_does_not_converge_on_rosenbrock() {
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let report = GradientDescent::new(0.01, 1000, 1e-5).optimize(&mut f, &mut x, &mut []).unwrap();
    assert_ne!(report.termination, Termination::Converged);
}

// ---- L-BFGS ----

#[test]
fn lbfgs_solves_sphere_quickly() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[5.0, 5.0]);
    let report = Lbfgs::new(10, 10, 1e-12).optimize(&mut f, &mut x, &mut []).unwrap();
    assert!(report.final_objective <= 1e-10);
    assert!(report.iterations <= 10);
}

#[test]
fn lbfgs_solves_rosenbrock() {
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let report = Lbfgs::new(10, 100, 1e-10).optimize(&mut f, &mut x, &mut []).unwrap();
    assert!(report.final_objective < 1e-8, "objective {}", report.final_objective);
    assert!(report.iterations <= 100);
    assert!((x[0] - 1.0).abs() < 1e-4 && (x[1] - 1.0).abs() < 1e-4);
    assert_eq!(report.best_coordinates, x);
}

#[test]
fn lbfgs_first_direction_is_steepest_descent() {
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let mut log = Recorder::new();
    Lbfgs::new(10, 1, 1e-6).optimize(&mut f, &mut x, &mut [&mut log]).unwrap();
    let gradients: Vec<_> = log.of(EventKind::Gradient).collect();
    let g0 = gradients[0].gradient.clone().unwrap();
    let x0 = &gradients[0].coordinates;
    let x1 = &gradients[1].coordinates;
    let step: Vec<f64> = x1.iter().zip(x0).map(|(a, b)| a - b).collect();
    let alpha = -step[0] / g0[0];
    assert!(alpha > 0.0);
    assert!((step[1] + alpha * g0[1]).abs() < 1e-12 * step[1].abs().max(1.0));
}

#[test]
fn lbfgs_accepted_steps_satisfy_sufficient_decrease() {
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let mut log = Recorder::new();
    let report = Lbfgs::default().optimize(&mut f, &mut x, &mut [&mut log]).unwrap();
    assert_eq!(report.termination, Termination::Converged);

    // Pair every trial point with its objective and gradient.
    let mut trials = Vec::new();
    let mut pending = None;
    for r in &log.log {
        match r.kind {
            EventKind::Evaluate => pending = Some((r.coordinates.clone(), r.value.unwrap())),
            EventKind::Gradient => {
                let (xs, v) = pending.take().unwrap();
                trials.push((xs, v, r.gradient.clone().unwrap()));
            }
            _ => {}
        }
    }
    let lookup = |at: &[f64]| trials.iter().rev().find(|t| t.0 == at).cloned().unwrap();

    let mut current = lookup(Rosenbrock::<f64>::initial().as_slice());
    let mut accepted = 0;
    for r in log.of(EventKind::StepTaken) {
        let next = lookup(&r.coordinates);
        let directional: f64 = current.2.iter().zip(next.0.iter().zip(&current.0)).map(|(g, (a, b))| g * (a - b)).sum();
        assert!(directional < 0.0);
        assert!(next.1 <= current.1 + 1e-4 * directional, "step {accepted}");
        current = next;
        accepted += 1;
    }
    assert_eq!(accepted, report.iterations);
}

// ---- SGD ----

/// First update from `x = 1` with gradient `2` (one-dimensional sphere),
/// run through the optimizer.
fn sgd_first_update(policy: UpdatePolicy) -> f64 {
    let mut f = full_function!(Sphere::<f64>::new(1));
    let mut x = point(&[1.0]);
    let mut sgd = Sgd::new(policy.default_step_size(), 1, 1, 0.0, false, policy);
    sgd.optimize(&mut f, &mut x, &mut []).unwrap();
    x[0] - 1.0
}

#[test]
fn sgd_first_step_oracles() {
    let eps: f64 = 1e-8;
    let cases = [
        // m = 0.2, v = 0.004, m_hat = 2, v_hat = 4
        (UpdatePolicy::adam(), -0.001 * 2.0 / (2.0 + eps)),
        // m = 0.2, u = 2, rate = 0.002 / 0.1
        (UpdatePolicy::adamax(), -(0.002 / 0.1) * 0.2 / 2.0),
        // G = 4
        (UpdatePolicy::adagrad(), -0.01 * 2.0 / (2.0 + eps)),
        // E[g^2] = 0.2, E[dx^2] = 0
        (UpdatePolicy::adadelta(), -(1e-6f64).sqrt() / (0.2f64 + 1e-6).sqrt() * 2.0),
        // v = 0.04
        (UpdatePolicy::rmsprop(), -0.01 * 2.0 / (0.2 + eps)),
        // r = 1/2, mean 1, mean square 2, zeta = 1/2
        (UpdatePolicy::smorms3(), -2.0 * 0.001 / (2.0f64.sqrt() + 1e-16)),
    ];
    for (policy, expected) in cases {
        let got = sgd_first_update(policy);
        assert!(relative(got, expected) <= 1e-12, "{}: {got:e} vs {expected:e}", policy.name());
    }
}

#[test]
fn policy_state_first_step_matches_optimizer() {
    for policy in [UpdatePolicy::adam(), UpdatePolicy::rmsprop(), UpdatePolicy::smorms3()] {
        let mut x = point(&[1.0]);
        let mut state = PolicyState::new(policy, &x);
        state.apply(policy.default_step_size(), &mut x, &point(&[2.0]));
        assert_eq!(state.t, 1);
        assert_eq!(x[0] - 1.0, sgd_first_update(policy));
    }
}

#[test]
fn vanilla_full_batch_equals_gradient_descent() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[1.0, 1.0]);
    let mut log = Recorder::new();
    Sgd::new(0.01, 2, 1, 0.0, false, UpdatePolicy::Vanilla)
        .optimize(&mut f, &mut x, &mut [&mut log])
        .unwrap();
    assert_eq!(x.as_slice(), &[0.99, 0.99]);
    let gradient = log.of(EventKind::Gradient).next().unwrap().gradient.clone().unwrap();
    assert_eq!(gradient, vec![2.0, 2.0]);
}

#[test]
fn momentum_and_nesterov_first_step_equal_vanilla() {
    let vanilla = sgd_first_update(UpdatePolicy::Vanilla);
    assert_eq!(sgd_first_update(UpdatePolicy::momentum()), vanilla);
    assert_eq!(sgd_first_update(UpdatePolicy::nesterov()), vanilla);
}

#[test]
fn momentum_second_step_uses_velocity() {
    let mut x = point(&[1.0]);
    let mut state = PolicyState::new(UpdatePolicy::momentum(), &x);
    state.apply(0.1, &mut x, &point(&[2.0]));
    state.apply(0.1, &mut x, &point(&[2.0]));
    // v1 = 2, v2 = 0.5 * 2 + 2 = 3
    assert!((x[0] - (1.0 - 0.2 - 0.3)).abs() < 1e-15);

    let state = PolicyState::new(UpdatePolicy::nesterov(), &point(&[0.0]));
    let mut moved = state.clone();
    moved.first = point(&[2.0]);
    assert_eq!(moved.lookahead(0.1, &point(&[1.0])).unwrap().as_slice(), &[1.0 - 0.1 * 0.5 * 2.0]);
}

/// Sphere parts that log which parts each batch call covers.
struct Tracked {
    sphere: Sphere<f64>,
    visits: Vec<usize>,
}

impl Objective for Tracked {
    type Elem = f64;
}

impl NumFunctions for Tracked {
    fn num_functions(&self) -> usize {
        self.sphere.num_functions()
    }
}

impl SeparableEvaluate for Tracked {
    fn evaluate_batch(&mut self, x: &Coordinates<f64>, begin: usize, batch_size: usize) -> f64 {
        self.visits.extend(begin..begin + batch_size);
        self.sphere.evaluate_batch(x, begin, batch_size)
    }
}

impl SeparableGradient for Tracked {
    fn gradient_batch(&mut self, x: &Coordinates<f64>, begin: usize, g: &mut Coordinates<f64>, batch_size: usize) {
        self.sphere.gradient_batch(x, begin, g, batch_size)
    }
}

#[test]
fn sgd_epoch_accounting() {
    for shuffle in [false, true] {
        let n = 10;
        let mut f = full_function!(Tracked {
            sphere: Sphere::new(n),
            visits: Vec::new(),
        });
        let mut x = Coordinates::filled(n, 1, 1.0);
        let mut log = Recorder::new();
        let report = Sgd::new(0.01, 3, 12, 0.0, shuffle, UpdatePolicy::Vanilla)
            .optimize(&mut f, &mut x, &mut [&mut log])
            .unwrap();
        assert_eq!(report.iterations, 12);
        assert_eq!(report.epochs, 3);

        let mut steps_in_epoch = 0;
        for r in &log.log {
            match r.kind {
                EventKind::BeginEpoch => steps_in_epoch = 0,
                EventKind::StepTaken => steps_in_epoch += 1,
                EventKind::EndEpoch => assert_eq!(steps_in_epoch, 4),
                _ => {}
            }
        }
        // The final evaluate after the run visits every part once more.
        let visits = &f.inner().visits;
        assert_eq!(visits.len(), 4 * n);
        for epoch in visits.chunks(n) {
            let mut sorted = epoch.to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..n).collect::<Vec<_>>(), "shuffle={shuffle}");
        }
    }
}

#[test]
fn sgd_is_deterministic_per_seed() {
    let run = |seed| {
        let mut f = full_function!(Sphere::<f64>::new(8));
        let mut x = Coordinates::filled(8, 1, 1.0);
        let mut log = Recorder::new();
        Sgd::new(0.05, 3, 30, 0.0, true, UpdatePolicy::adam())
            .with_seed(seed)
            .optimize(&mut f, &mut x, &mut [&mut log])
            .unwrap();
        log.log
    };
    assert_eq!(run(3), run(3));
    assert_ne!(run(3), run(4));
}

#[test]
fn sgd_converges_on_sphere() {
    let mut f = full_function!(Sphere::<f64>::new(4));
    let mut x = point(&[1.0, -2.0, 3.0, -4.0]);
    let report = Sgd::new(0.5, 2, 100_000, 1e-12, true, UpdatePolicy::Vanilla)
        .optimize(&mut f, &mut x, &mut [])
        .unwrap();
    assert_eq!(report.termination, Termination::Converged);
    assert!(report.final_objective < 1e-10);
}

#[test]
fn sgd_rejects_bad_configuration() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[1.0, 1.0]);
    assert!(Sgd::new(0.01, 0, 10, 0.0, false, UpdatePolicy::Vanilla).optimize(&mut f, &mut x, &mut []).is_err());
    assert!(Sgd::new(0.0, 1, 10, 0.0, false, UpdatePolicy::Vanilla).optimize(&mut f, &mut x, &mut []).is_err());
    let mut empty = full_function!(Sphere::<f64>::new(0));
    let mut nothing = Coordinates::zeros(0, 1);
    assert!(Sgd::default().optimize(&mut empty, &mut nothing, &mut []).is_err());
}

// ---- simulated annealing ----

#[test]
fn metropolis_acceptance_rates() {
    assert_eq!(acceptance_probability(-1.0, 1e-3), 1.0);
    assert_eq!(acceptance_probability(-1.0, 1e3), 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 200_000;
    let accepted = (0..trials).filter(|_| metropolis_accept(1.0, 1.0, rng.random())).count();
    let rate = accepted as f64 / trials as f64;
    assert!((rate - (-1.0f64).exp()).abs() < 0.01, "rate {rate}");
}

fn reference_annealer(seed: u64) -> SimulatedAnnealing {
    SimulatedAnnealing::new(ExponentialSchedule::default(), 100_000, 10_000.0, 1000, 100, 0.0).with_seed(seed)
}

#[test]
fn sa_counts_evaluations_exactly_and_is_deterministic() {
    let run = |seed| {
        let mut f = full_function!(Rosenbrock::<f64>::new());
        let mut x = Rosenbrock::<f64>::initial();
        let report = reference_annealer(seed).optimize(&mut f, &mut x, &mut []).unwrap();
        assert_eq!(f.counters().evaluations, 100_000);
        assert_eq!(report.evaluations, 100_000);
        assert_eq!(report.termination, Termination::MaxIterations);
        assert_eq!(report.best_coordinates, x);
        report
    };
    let a = run(1);
    let b = run(1);
    assert_eq!(a.final_objective.to_bits(), b.final_objective.to_bits());
    assert_eq!(a.best_coordinates, b.best_coordinates);
    assert!(a.final_objective < 0.1);
}

#[test]
fn sa_reports_the_best_point_seen() {
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let mut log = Recorder::new();
    let report = SimulatedAnnealing::new(ExponentialSchedule::default(), 5000, 100.0, 100, 50, 0.0)
        .optimize(&mut f, &mut x, &mut [&mut log])
        .unwrap();
    let evaluations: Vec<_> = log.of(EventKind::Evaluate).collect();
    assert_eq!(evaluations.len(), 5000);
    let best = evaluations
        .iter()
        .min_by(|a, b| a.value.unwrap().total_cmp(&b.value.unwrap()))
        .unwrap();
    assert_eq!(report.final_objective, best.value.unwrap());
    assert_eq!(report.best_coordinates.as_slice(), best.coordinates.as_slice());

    let mut running = f64::INFINITY;
    let mut trace = Vec::new();
    for r in &evaluations {
        running = running.min(r.value.unwrap());
        trace.push(running);
    }
    assert!(trace.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn sa_tolerance_enables_early_stop() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[0.0, 0.0]);
    let report = SimulatedAnnealing::new(ExponentialSchedule::default(), 100_000, 1e-6, 0, 100, 1e-3)
        .optimize(&mut f, &mut x, &mut [])
        .unwrap();
    assert_eq!(report.termination, Termination::Converged);
    assert!(report.iterations < 100_000);
}

#[test]
fn sa_rejects_bad_configuration() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[1.0, 1.0]);
    assert!(SimulatedAnnealing::new(ExponentialSchedule::default(), 10, 0.0, 1, 1, 0.0)
        .optimize(&mut f, &mut x, &mut [])
        .is_err());
    assert!(SimulatedAnnealing::new(ExponentialSchedule::new(1.5), 10, 1.0, 1, 1, 0.0)
        .optimize(&mut f, &mut x, &mut [])
        .is_err());
}

#[test]
fn exponential_schedule_law() {
    let schedule = ExponentialSchedule::new(0.1);
    assert!((schedule.next(10.0) - 9.0).abs() < 1e-12);
}

// ---- coordinate descent ----

#[test]
fn cd_one_sweep_on_sphere() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut x = point(&[1.0, 1.0]);
    CoordinateDescent::new(0.25, 2, 0.0, CoordinateSelection::Cyclic)
        .optimize(&mut f, &mut x, &mut [])
        .unwrap();
    assert_eq!(x.as_slice(), &[0.5, 0.5]);
}

#[test]
fn cd_partial_gradient_touches_one_coordinate() {
    let mut f = full_function!(Sphere::<f64>::new(2));
    let mut g = SparseGradient::new(2);
    f.partial_gradient(&point(&[1.0, 1.0]), 0, &mut g).unwrap();
    assert_eq!(g.entries(), &[(0, 2.0)]);
}

/// `f(x) = sum (x_j - j)^2`.
#[derive(Clone)]
struct Shifted(usize);

impl Objective for Shifted {
    type Elem = f64;
}

impl Evaluate for Shifted {
    fn evaluate(&mut self, x: &Coordinates<f64>) -> f64 {
        x.iter().enumerate().map(|(j, &v)| (v - j as f64).powi(2)).sum()
    }
}

impl NumFeatures for Shifted {
    fn num_features(&self) -> usize {
        self.0
    }
}

impl PartialGradient for Shifted {
    fn partial_gradient(&mut self, x: &Coordinates<f64>, j: usize, g: &mut SparseGradient<f64>) {
        g.set(j, 2.0 * (x[j] - j as f64));
    }
}

#[test]
fn cd_exact_on_shifted_quadratic() {
    for selection in [CoordinateSelection::Cyclic, CoordinateSelection::RandomPermutation] {
        let mut f = full_function!(Shifted(5));
        let mut x = Coordinates::filled(5, 1, 7.0);
        CoordinateDescent::new(0.5, 5, 0.0, selection).optimize(&mut f, &mut x, &mut []).unwrap();
        assert_eq!(x.as_slice(), &[0.0, 1.0, 2.0, 3.0, 4.0]);
    }
}

#[test]
fn cd_converges_on_sphere() {
    let mut f = full_function!(Sphere::<f64>::new(3));
    let mut x = point(&[1.0, -1.0, 2.0]);
    let report = CoordinateDescent::new(0.1, 100_000, 1e-12, CoordinateSelection::RandomPermutation)
        .optimize(&mut f, &mut x, &mut [])
        .unwrap();
    assert_eq!(report.termination, Termination::Converged);
    assert!(report.final_objective < 1e-10);
}

// ---- grid search ----

/// `(x1 - 2)^2 + (x2 - 1)^2`, evaluable on any grid.
struct Bowl;

impl Objective for Bowl {
    type Elem = f64;
}

impl Evaluate for Bowl {
    fn evaluate(&mut self, x: &Coordinates<f64>) -> f64 {
        (x[0] - 2.0).powi(2) + (x[1] - 1.0).powi(2)
    }
}

#[test]
fn grid_search_examples() {
    let mut f = full_function!(Bowl);
    let mut x = point(&[0.0, 0.0]);
    let dims = vec![vec![0.0, 1.0, 2.0], vec![0.0, 1.0]];
    let report = GridSearch::new().optimize_over(&mut f, &dims, &mut x, &mut []).unwrap();
    assert_eq!(x.as_slice(), &[2.0, 1.0]);
    assert_eq!(report.final_objective, 0.0);
    assert_eq!(report.evaluations, 6);

    let mut x = point(&[0.0, 0.0]);
    let single = vec![vec![5.0], vec![-3.0]];
    GridSearch::new().optimize_over(&mut f, &single, &mut x, &mut []).unwrap();
    assert_eq!(x.as_slice(), &[5.0, -3.0]);

    assert!(GridSearch::new().optimize_over(&mut f, &[], &mut x, &mut []).is_err());
    assert!(GridSearch::new().optimize_over(&mut f, &[vec![1.0], vec![]], &mut x, &mut []).is_err());
}

struct Flat;

impl Objective for Flat {
    type Elem = f64;
}

impl Evaluate for Flat {
    fn evaluate(&mut self, _: &Coordinates<f64>) -> f64 {
        1.0
    }
}

#[test]
fn grid_search_ties_go_to_the_first_point() {
    let mut f = full_function!(Flat);
    let mut x = point(&[9.0, 9.0]);
    let dims = vec![vec![3.0, 4.0], vec![7.0, 8.0]];
    GridSearch::new().optimize_over(&mut f, &dims, &mut x, &mut []).unwrap();
    assert_eq!(x.as_slice(), &[3.0, 7.0]);
}

/// Random lookup table over an integer grid, so values are arbitrary.
struct Table {
    sizes: Vec<usize>,
    values: Vec<f64>,
}

impl Table {
    fn index(&self, x: &Coordinates<f64>) -> usize {
        x.iter().zip(&self.sizes).fold(0, |acc, (&v, &s)| acc * s + v as usize)
    }
}

impl Objective for Table {
    type Elem = f64;
}

impl Evaluate for Table {
    fn evaluate(&mut self, x: &Coordinates<f64>) -> f64 {
        self.values[self.index(x)]
    }
}

impl optkit::function::CategoricalInfo for Table {
    fn categories(&self) -> Vec<Vec<f64>> {
        self.sizes.iter().map(|&s| (0..s).map(|v| v as f64).collect()).collect()
    }
}

#[test]
fn grid_search_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for instance in 0..50 {
        let dims = rng.random_range(1..=3);
        let sizes: Vec<usize> = (0..dims).map(|_| rng.random_range(1..=10)).collect();
        let total: usize = sizes.iter().product();
        // Coarse values make ties common.
        let values: Vec<f64> = (0..total).map(|_| rng.random_range(0..20) as f64).collect();

        let mut best = (Vec::new(), f64::INFINITY);
        let mut index = vec![0usize; dims];
        'enumerate: loop {
            let flat = index.iter().zip(&sizes).fold(0, |acc, (&v, &s)| acc * s + v);
            if values[flat] < best.1 {
                best = (index.iter().map(|&v| v as f64).collect(), values[flat]);
            }
            let mut k = dims;
            loop {
                if k == 0 {
                    break 'enumerate;
                }
                k -= 1;
                index[k] += 1;
                if index[k] < sizes[k] {
                    break;
                }
                index[k] = 0;
            }
        }

        let mut f = full_function!(Table { sizes, values });
        let mut x = Coordinates::zeros(dims, 1);
        let report = GridSearch::new().optimize(&mut f, &mut x, &mut []).unwrap();
        assert_eq!(x.as_slice(), best.0.as_slice(), "instance {instance}");
        assert_eq!(report.final_objective, best.1);
        assert_eq!(report.evaluations, total);
    }
}

#[test]
fn grid_search_needs_categories() {
    let mut f = full_function!(Bowl);
    let mut x = point(&[0.0, 0.0]);
    let err = GridSearch::new().optimize(&mut f, &mut x, &mut []).unwrap_err();
    assert!(err.to_string().contains("categories()"));
}

// ---- augmented Lagrangian ----

#[test]
fn augmented_lagrangian_finds_the_constrained_minimum() {
    let mut f = full_function!(ConstrainedQuadratic::<f64>::new());
    let mut x = point(&[0.0, 0.0]);
    let mut al = AugmentedLagrangian::default();
    let report = al.optimize(&mut f, &mut x, &mut []).unwrap();
    assert_eq!(report.termination, Termination::Converged);
    let violation = (x[0] + x[1] - 1.0).abs();
    assert!(violation < 1e-5);
    assert!(((x[0] - 1.0).powi(2) + x[1].powi(2)).sqrt() < 1e-3);
    assert!((report.final_objective - 2.0).abs() < 1e-4);
}

#[test]
fn augmented_lagrangian_violation_decreases() {
    let mut f = full_function!(ConstrainedQuadratic::<f64>::new());
    let mut x = point(&[0.0, 0.0]);
    let mut al = AugmentedLagrangian::default();
    al.optimize(&mut f, &mut x, &mut []).unwrap();
    let history = al.violation_history();
    assert!(history.len() >= 3);
    for k in 2..history.len() {
        assert!(history[k] <= history[k - 2], "{history:?}");
    }
}

#[test]
fn augmented_lagrangian_starting_feasible() {
    let mut f = full_function!(ConstrainedQuadratic::<f64>::new());
    let mut x = point(&[1.0, 0.0]);
    let mut al = AugmentedLagrangian::new(Lbfgs::default(), 100, 1e-7);
    let report = al.optimize(&mut f, &mut x, &mut []).unwrap();
    assert_eq!(report.termination, Termination::Converged);
    assert!((x[0] - 1.0).abs() < 1e-6 && x[1].abs() < 1e-6);
}

#[test]
fn augmented_lagrangian_requires_constraints() {
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let err = AugmentedLagrangian::default().optimize(&mut f, &mut x, &mut []).unwrap_err();
    assert!(err.to_string().contains("constrained"));
}
