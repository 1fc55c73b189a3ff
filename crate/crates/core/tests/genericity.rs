use optkit::function::{Evaluate, Objective};
use optkit::optimizers::{
    AugmentedLagrangian, CoordinateDescent, CoordinateSelection, ExponentialSchedule, GradientDescent, GridSearch,
    Lbfgs, SimulatedAnnealing, Sgd, UpdatePolicy,
};
use optkit::problems::{Rosenbrock, Sphere};
use optkit::{full_function, Coordinates, Error, Termination};

#[test]
fn single_precision_runs_stay_single_precision() {
    let mut f = full_function!(Sphere::<f32>::new(3));
    let mut x = Coordinates::<f32>::filled(3, 1, 1.0);
    let report = GradientDescent::new(0.1, 200, 1e-6).optimize(&mut f, &mut x, &mut []).unwrap();
    let objective: f32 = report.final_objective;
    assert!(objective < 1e-6);

    let mut f = full_function!(Rosenbrock::<f32>::new());
    let mut x = Rosenbrock::<f32>::initial();
    let report = Lbfgs::default().optimize(&mut f, &mut x, &mut []).unwrap();
    assert!(report.final_objective < 1e-4, "{}", report.final_objective);

    let mut x = Rosenbrock::<f32>::initial();
    let report = SimulatedAnnealing::new(ExponentialSchedule::default(), 20_000, 100.0, 100, 50, 0.0)
        .optimize(&mut f, &mut x, &mut [])
        .unwrap();
    let best: &Coordinates<f32> = &report.best_coordinates;
    assert!(report.final_objective < 1.0);
    assert_eq!(best.len(), 2);

    let mut f = full_function!(Sphere::<f32>::new(8));
    let mut x = Coordinates::<f32>::filled(8, 1, 1.0);
    let report = Sgd::new(0.01, 2, 4000, 0.0, true, UpdatePolicy::adam()).optimize(&mut f, &mut x, &mut []).unwrap();
    assert!(report.final_objective < 1e-2, "{}", report.final_objective);
}

/// Integer objective over a fixed grid.
struct Lattice;

impl Objective for Lattice {
    type Elem = i64;
}

impl Evaluate for Lattice {
    fn evaluate(&mut self, x: &Coordinates<i64>) -> i64 {
        (x[0] - 3).abs() + (x[1] + 2).pow(2)
    }
}

#[test]
fn grid_search_over_integers() {
    let mut f = full_function!(Lattice);
    let mut x = Coordinates::<i64>::zeros(2, 1);
    let grid = vec![(-5..=5).collect::<Vec<i64>>(), (-5..=5).collect()];
    let report = GridSearch::new().optimize_over(&mut f, &grid, &mut x, &mut []).unwrap();
    assert_eq!(x.as_slice(), &[3, -2]);
    assert_eq!(report.final_objective, 0);
    assert_eq!(report.evaluations, 121);
    assert_eq!(report.termination, Termination::Converged);

    let mut f = full_function!(Sphere::<i64>::new(2));
    let mut x = Coordinates::<i64>::zeros(2, 1);
    let grid = vec![vec![-3, 2, 5], vec![4, -1]];
    let report = GridSearch::new().optimize_over(&mut f, &grid, &mut x, &mut []).unwrap();
    assert_eq!(x.as_slice(), &[2, -1]);
    assert_eq!(report.final_objective, 5);
}

/// Rosenbrock with only the value available.
struct ValueOnly;

impl Objective for ValueOnly {
    type Elem = f64;
}

impl Evaluate for ValueOnly {
    fn evaluate(&mut self, x: &Coordinates<f64>) -> f64 {
        let mut r = Rosenbrock::<f64>::new();
        r.evaluate(x)
    }
}

#[test]
fn missing_capabilities_fail_before_any_call() {
    let start = Rosenbrock::<f64>::initial();
    let outcomes: Vec<(&str, Result<_, Error>, _)> = vec![
        {
            let mut f = full_function!(ValueOnly);
            let r = GradientDescent::default().optimize(&mut f, &mut start.clone(), &mut []);
            ("gradient_descent", r, f.counters())
        },
        {
            let mut f = full_function!(ValueOnly);
            let r = Lbfgs::default().optimize(&mut f, &mut start.clone(), &mut []);
            ("lbfgs", r, f.counters())
        },
        {
            let mut f = full_function!(ValueOnly);
            let r = Sgd::default().optimize(&mut f, &mut start.clone(), &mut []);
            ("sgd", r, f.counters())
        },
        {
            let mut f = full_function!(ValueOnly);
            let r = CoordinateDescent::new(0.1, 10, 0.0, CoordinateSelection::Cyclic).optimize(
                &mut f,
                &mut start.clone(),
                &mut [],
            );
            ("coordinate_descent", r, f.counters())
        },
        {
            let mut f = full_function!(ValueOnly);
            let r = AugmentedLagrangian::default().optimize(&mut f, &mut start.clone(), &mut []);
            ("augmented_lagrangian", r, f.counters())
        },
        {
            let mut f = full_function!(ValueOnly);
            let r = GridSearch::new().optimize(&mut f, &mut start.clone(), &mut []);
            ("grid_search", r, f.counters())
        },
    ];
    for (name, result, counters) in outcomes {
        match result {
            Err(Error::Requirement(e)) => {
                assert!(!e.missing_methods().is_empty(), "{name}");
                assert!(e.to_string().contains("Methods supplied: evaluate(x)."), "{name}: {e}");
            }
            Err(other) => panic!("{name}: unexpected error {other}"),
            Ok(_) => panic!("{name}: ran without the required methods"),
        }
        assert_eq!(counters, Default::default(), "{name}");
    }

    let mut f = full_function!(ValueOnly);
    let mut x = start.clone();
    let report = SimulatedAnnealing::new(ExponentialSchedule::default(), 500, 100.0, 100, 50, 0.0)
        .optimize(&mut f, &mut x, &mut [])
        .unwrap();
    assert!(report.final_objective <= 24.2);
}
