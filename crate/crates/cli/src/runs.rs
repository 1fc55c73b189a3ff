use std::time::Instant;

use optkit::callbacks::{Callback, CallbackDecision, CallbackResult, State, StepState};
use optkit::optimizers::{ExponentialSchedule, Lbfgs, SimulatedAnnealing, Sgd};
use optkit::problems::{synthetic_regression, CombinedRegression, LinearRegression, Rosenbrock, SeparateRegression};
use optkit::{full_function, Coordinates, FullFunction, Termination};

use crate::{BenchConfig, BenchError, CurveOptimizer, Experiment, Table};

/// Comment written above the learning-curve header.
pub const SPALERA_NOTE: &str =
    "momentum SGD replaces SPALeRA, which is not implemented; the other five optimizers are as published";

const SA_ITERATIONS: usize = 100_000;
const LBFGS_ITERATIONS: usize = 10;

/// Runs the experiment selected by `config` and returns its output table.
pub fn run(config: &BenchConfig) -> Result<Table, BenchError> {
    config.validate()?;
    match config.experiment {
        Experiment::RosenbrockSa => Ok(run_rosenbrock_sa(config)?.table()),
        Experiment::LinregLbfgs => Ok(run_linreg_lbfgs(config)?.table()),
        Experiment::Curves => Ok(run_curves(config)?.table()),
    }
}

/// Shortest decimal that parses back to the same value, switching to
/// exponent notation for very large or small magnitudes.
pub fn num(value: f64) -> String {
    format!("{value:?}")
}

fn finite(value: f64, what: &str) -> Result<f64, BenchError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(BenchError::Numerical(format!("{what} is {value}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnnealingRun {
    pub seed: u64,
    pub evaluations: usize,
    pub best_objective: f64,
    pub best_coordinates: Vec<f64>,
    pub termination: Termination,
    pub elapsed_seconds: f64,
}

impl AnnealingRun {
    pub fn table(&self) -> Table {
        let mut row = vec![
            "rosenbrock".to_string(),
            "simulated_annealing".to_string(),
            self.seed.to_string(),
            self.evaluations.to_string(),
            num(self.best_objective),
        ];
        row.extend(self.best_coordinates.iter().copied().map(num));
        row.push(num(self.elapsed_seconds));
        Table {
            comments: Vec::new(),
            header: vec!["problem", "optimizer", "seed", "evaluations", "best_objective", "x1", "x2", "elapsed_seconds"],
            rows: vec![row],
        }
    }
}

/// Simulated annealing on Rosenbrock from (-1.2, 1) with 100000 iterations,
/// initial temperature 10000, 1000 burn-in moves, 100 moves per sweep and
/// early stopping disabled.
pub fn run_rosenbrock_sa(config: &BenchConfig) -> Result<AnnealingRun, BenchError> {
    let iterations = config.iterations.unwrap_or(SA_ITERATIONS);
    let mut f = full_function!(Rosenbrock::<f64>::new());
    let mut x = Rosenbrock::<f64>::initial();
    let mut sa = SimulatedAnnealing::new(ExponentialSchedule::default(), iterations, 10_000.0, 1000, 100, 0.0)
        .with_seed(config.seed);
    let report = sa.optimize(&mut f, &mut x, &mut [])?;
    if report.termination == Termination::NumericalFailure {
        return Err(BenchError::Numerical("simulated annealing produced a non-finite objective".into()));
    }
    Ok(AnnealingRun {
        seed: config.seed,
        evaluations: f.counters().evaluations,
        best_objective: finite(report.final_objective, "best objective")?,
        best_coordinates: report.best_coordinates.into_vec(),
        termination: report.termination,
        elapsed_seconds: report.elapsed_seconds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Combined,
    Separate,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Combined => "combined",
            Variant::Separate => "separate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionVariant {
    pub variant: Variant,
    pub iterations: usize,
    /// Objective+gradient requests issued by L-BFGS.
    pub requests: usize,
    pub residual_computations: usize,
    /// Objective at each accepted iterate, starting point excluded.
    pub accepted_objectives: Vec<f64>,
    pub iterates: Vec<Vec<f64>>,
    pub initial_objective: f64,
    pub final_objective: f64,
    pub elapsed_seconds: f64,
}

impl RegressionVariant {
    pub fn residuals_per_request(&self) -> f64 {
        self.residual_computations as f64 / self.requests as f64
    }

    /// Initial objective followed by every accepted one never increases.
    pub fn non_increasing(&self) -> bool {
        std::iter::once(&self.initial_objective)
            .chain(&self.accepted_objectives)
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[1] <= w[0])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionComparison {
    pub combined: RegressionVariant,
    pub separate: RegressionVariant,
}

impl RegressionComparison {
    pub fn identical_iterates(&self) -> bool {
        self.combined.iterates == self.separate.iterates
    }

    pub fn table(&self) -> Table {
        let identical = self.identical_iterates().to_string();
        let rows = [&self.combined, &self.separate]
            .into_iter()
            .map(|v| {
                vec![
                    "linear_regression".to_string(),
                    v.variant.name().to_string(),
                    v.iterations.to_string(),
                    v.requests.to_string(),
                    v.residual_computations.to_string(),
                    num(v.residuals_per_request()),
                    num(v.final_objective),
                    identical.clone(),
                    num(v.elapsed_seconds),
                ]
            })
            .collect();
        Table {
            comments: Vec::new(),
            header: vec![
                "problem",
                "variant",
                "iterations",
                "requests",
                "residual_computations",
                "residuals_per_request",
                "final_objective",
                "identical_iterates",
                "elapsed_seconds",
            ],
            rows,
        }
    }
}

/// Remembers the last objective seen and snapshots it with the iterate
/// whenever a step is accepted.
#[derive(Default)]
struct AcceptedSteps {
    last: Option<f64>,
    objectives: Vec<f64>,
    iterates: Vec<Vec<f64>>,
}

impl Callback<f64> for AcceptedSteps {
    fn evaluate(&mut self, _: &State<'_, f64>, objective: f64) -> CallbackResult {
        self.last = Some(objective);
        Ok(CallbackDecision::Continue)
    }

    fn step_taken(&mut self, s: &mut StepState<'_, f64>) -> CallbackResult {
        self.objectives.extend(self.last);
        self.iterates.push(s.coordinates.as_slice().to_vec());
        Ok(CallbackDecision::Continue)
    }
}

fn lbfgs_variant<T>(
    variant: Variant,
    mut f: FullFunction<T>,
    problem: fn(&T) -> &LinearRegression<f64>,
    iterations: usize,
) -> Result<RegressionVariant, BenchError>
where
    T: optkit::function::Objective<Elem = f64>,
{
    let dimension = problem(f.inner()).dimension();
    let mut x = Coordinates::zeros(dimension, 1);
    let mut g = x.zeros_like();
    let initial_objective = finite(f.evaluate_with_gradient(&x, &mut g).map_err(optkit::Error::from)?, "initial objective")?;
    f.reset_counters();
    let before = problem(f.inner()).residual_computations();

    let mut steps = AcceptedSteps::default();
    let mut lbfgs = Lbfgs {
        max_iterations: iterations,
        ..Lbfgs::default()
    };
    let report = lbfgs.optimize(&mut f, &mut x, &mut [&mut steps])?;
    if report.termination == Termination::NumericalFailure {
        return Err(BenchError::Numerical("L-BFGS produced a non-finite objective".into()));
    }
    let counters = f.counters();
    let requests = match variant {
        Variant::Combined => counters.combined,
        Variant::Separate => counters.evaluations.min(counters.gradients),
    };
    Ok(RegressionVariant {
        variant,
        iterations: report.iterations,
        requests,
        residual_computations: problem(f.inner()).residual_computations() - before,
        accepted_objectives: steps.objectives,
        iterates: steps.iterates,
        initial_objective,
        final_objective: finite(report.final_objective, "final objective")?,
        elapsed_seconds: report.elapsed_seconds,
    })
}

/// L-BFGS for 10 iterations on seeded regression data, first through a
/// function that only has a combined objective+gradient method, then through
/// one with only separate methods.
pub fn run_linreg_lbfgs(config: &BenchConfig) -> Result<RegressionComparison, BenchError> {
    let iterations = config.iterations.unwrap_or(LBFGS_ITERATIONS);
    let data = synthetic_regression::<f64>(config.samples, config.dimension, config.noise, config.seed);
    let combined = full_function!(CombinedRegression(data.clone().into_problem()));
    let separate = full_function!(SeparateRegression(data.into_problem()));
    Ok(RegressionComparison {
        combined: lbfgs_variant(Variant::Combined, combined, |p| &p.0, iterations)?,
        separate: lbfgs_variant(Variant::Separate, separate, |p| &p.0, iterations)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    pub problem: &'static str,
    pub optimizer: CurveOptimizer,
    pub epoch: usize,
    pub evaluations: usize,
    pub objective: f64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curves {
    /// Objective at the all-zero starting point shared by every optimizer.
    pub initial_objective: f64,
    pub rows: Vec<CurveRow>,
}

impl Curves {
    pub fn table(&self) -> Table {
        Table {
            comments: vec![
                SPALERA_NOTE.to_string(),
                format!("initial_objective={}", num(self.initial_objective)),
            ],
            header: vec!["problem", "optimizer", "epoch", "evaluations", "objective", "elapsed_seconds"],
            rows: self
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.problem.to_string(),
                        r.optimizer.to_string(),
                        r.epoch.to_string(),
                        r.evaluations.to_string(),
                        num(r.objective),
                        num(r.elapsed_seconds),
                    ]
                })
                .collect(),
        }
    }

    pub fn rows_for(&self, optimizer: CurveOptimizer) -> impl Iterator<Item = &CurveRow> {
        self.rows.iter().filter(move |r| r.optimizer == optimizer)
    }
}

/// Collects one row per finished epoch.
struct EpochLog {
    optimizer: CurveOptimizer,
    started: Instant,
    rows: Vec<CurveRow>,
}

impl Callback<f64> for EpochLog {
    fn end_epoch(&mut self, s: &State<'_, f64>, epoch: usize, objective: f64) -> CallbackResult {
        let counters = s.function.counters;
        self.rows.push(CurveRow {
            problem: "linear_regression",
            optimizer: self.optimizer,
            epoch,
            evaluations: counters.evaluations + counters.combined,
            objective,
            elapsed_seconds: self.started.elapsed().as_secs_f64(),
        });
        Ok(CallbackDecision::Continue)
    }
}

/// Runs each configured SGD variant for `epochs` passes over seeded
/// regression data, starting from zero, logging the epoch objective.
pub fn run_curves(config: &BenchConfig) -> Result<Curves, BenchError> {
    let data = synthetic_regression::<f64>(config.samples, config.dimension, config.noise, config.seed);
    let start = Coordinates::zeros(config.dimension, 1);
    let mut probe = full_function!(data.clone().into_problem());
    let initial_objective = finite(probe.evaluate(&start).map_err(optkit::Error::from)?, "initial objective")?;

    let batches = config.samples.div_ceil(config.batch_size);
    let mut rows = Vec::new();
    for &optimizer in &config.optimizers {
        let policy = optimizer.policy();
        let step = config.step_size.unwrap_or_else(|| policy.default_step_size());
        let mut sgd = Sgd::new(step, config.batch_size, config.epochs * batches, config.tolerance, true, policy)
            .with_seed(config.seed);
        let mut f = full_function!(data.clone().into_problem());
        let mut x = start.clone();
        let mut log = EpochLog {
            optimizer,
            started: Instant::now(),
            rows: Vec::new(),
        };
        let report = sgd.optimize(&mut f, &mut x, &mut [&mut log])?;
        if report.termination == Termination::NumericalFailure {
            return Err(BenchError::Numerical(format!("{optimizer} diverged")));
        }
        for row in &log.rows {
            finite(row.objective, &format!("{optimizer} objective at epoch {}", row.epoch))?;
        }
        rows.extend(log.rows);
    }
    Ok(Curves { initial_objective, rows })
}
