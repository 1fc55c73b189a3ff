use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use num_traits::{Float, ToPrimitive};

use crate::callbacks::{Callback, CallbackEvent, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{require, Coordinates, ElementTypeRequirement, Real, Scalar, TypeDescriptor};
use crate::Error;

use super::{OptimizationReport, Run, Termination, DEFAULT_SEED};

/// `T <- (1 - lambda) T` once per proposal after the burn-in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentialSchedule {
    pub lambda: f64,
}

impl Default for ExponentialSchedule {
    fn default() -> Self {
        Self { lambda: 0.001 }
    }
}

impl ExponentialSchedule {
    pub fn new(lambda: f64) -> Self {
        Self { lambda }
    }

    pub fn next(&self, temperature: f64) -> f64 {
        (1.0 - self.lambda) * temperature
    }
}

/// Metropolis acceptance probability `min(1, exp(-delta / T))`.
pub fn acceptance_probability(delta: f64, temperature: f64) -> f64 {
    if delta <= 0.0 {
        1.0
    } else {
        (-delta / temperature).exp()
    }
}

/// Accepts the move when `u` (uniform on `[0, 1)`) falls below the
/// acceptance probability.
pub fn metropolis_accept(delta: f64, temperature: f64, u: f64) -> bool {
    delta <= 0.0 || u < acceptance_probability(delta, temperature)
}

/// Simulated annealing with single-coordinate Gaussian proposals.
///
/// Every iteration costs exactly one objective evaluation, the first being
/// the evaluation of the starting point. Proposals cycle through the
/// coordinates; each coordinate's proposal scale is adapted after every
/// `moves_per_sweep` proposals so its acceptance rate approaches
/// `target_acceptance`. Cooling starts after `init_moves` proposals.
/// See [`return_gap`](Self::return_gap) for the jump back to the best point.
///
/// On return `x` holds the best point seen.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulatedAnnealing {
    pub schedule: ExponentialSchedule,
    pub max_iterations: usize,
    pub initial_temperature: f64,
    pub init_moves: usize,
    pub moves_per_sweep: usize,
    /// Stop once three consecutive sweeps improve the best objective by less
    /// than this; zero runs all `max_iterations`.
    pub tolerance: f64,
    pub initial_scale: f64,
    pub target_acceptance: f64,
    /// At the end of a sweep the chain jumps back to the best point when the
    /// current objective exceeds the best by more than `return_gap * T`,
    /// i.e. when the current state has become negligibly likely relative to
    /// the best one. `f64::INFINITY` disables the jump.
    pub return_gap: f64,
    pub seed: u64,
}

impl Default for SimulatedAnnealing {
    fn default() -> Self {
        Self {
            schedule: ExponentialSchedule::default(),
            max_iterations: 1_000_000,
            initial_temperature: 10_000.0,
            init_moves: 1000,
            moves_per_sweep: 100,
            tolerance: 1e-5,
            initial_scale: 0.3,
            target_acceptance: 0.44,
            return_gap: 20.0,
            seed: DEFAULT_SEED,
        }
    }
}

const STALE_SWEEPS: usize = 3;

impl SimulatedAnnealing {
    pub fn new(
        schedule: ExponentialSchedule,
        max_iterations: usize,
        initial_temperature: f64,
        init_moves: usize,
        moves_per_sweep: usize,
        tolerance: f64,
    ) -> Self {
        Self {
            schedule,
            max_iterations,
            initial_temperature,
            init_moves,
            moves_per_sweep,
            tolerance,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn optimize<T>(
        &mut self,
        f: &mut FullFunction<T>,
        x: &mut Coordinates<T::Elem>,
        callbacks: &mut [&mut dyn Callback<T::Elem>],
    ) -> Result<OptimizationReport<T::Elem>, Error>
    where
        T: Objective,
        T::Elem: Real,
    {
        f.check(FunctionClass::Arbitrary)?;
        require(ElementTypeRequirement::FloatingPoint, &[TypeDescriptor::of::<T::Elem>()])?;
        if !(self.initial_temperature > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "initial temperature must be positive, got {}",
                self.initial_temperature
            )));
        }
        if !(0.0 < self.schedule.lambda && self.schedule.lambda < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "cooling rate must lie in (0, 1), got {}",
                self.schedule.lambda
            )));
        }
        if x.is_empty() {
            return Err(Error::InvalidArgument("coordinates are empty".into()));
        }

        let progress = Progress {
            max_iterations: Some(self.max_iterations),
            ..Progress::default()
        };
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, x, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }
        if self.max_iterations == 0 {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::MaxIterations);
        }

        let dims = x.len();
        let sweep = self.moves_per_sweep.max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut scales = vec![self.initial_scale; dims];
        let mut tried = vec![0usize; dims];
        let mut accepted = vec![0usize; dims];
        let mut temperature = self.initial_temperature;

        let mut current = f.evaluate(x)?;
        let mut iterations = 1;
        run.progress.iteration = iterations;
        let mut best = x.clone();
        let mut best_objective = current;
        let mut sweep_start_best = best_objective;
        let mut stale = 0;

        let termination = 'run: {
            if run.emit(self, f, x, CallbackEvent::Evaluate { objective: current })? {
                break 'run Termination::CallbackRequested;
            }
            if !current.is_finite() {
                break 'run Termination::NumericalFailure;
            }
            let mut proposals = 0usize;
            while iterations < self.max_iterations {
                let j = proposals % dims;
                let old = x[j];
                let z: f64 = rng.sample(StandardNormal);
                x.as_mut_slice()[j] = old + T::Elem::lit(scales[j] * z);

                let candidate = f.evaluate(x)?;
                iterations += 1;
                proposals += 1;
                run.progress.iteration = iterations;
                if run.emit(self, f, x, CallbackEvent::Evaluate { objective: candidate })? {
                    x.as_mut_slice()[j] = old;
                    break 'run Termination::CallbackRequested;
                }
                if candidate.is_nan() {
                    x.as_mut_slice()[j] = old;
                    break 'run Termination::NumericalFailure;
                }

                let delta = (candidate - current).to_f64().unwrap_or(f64::INFINITY);
                let u: f64 = rng.random();
                tried[j] += 1;
                if candidate.is_finite() && metropolis_accept(delta, temperature, u) {
                    accepted[j] += 1;
                    current = candidate;
                    if current < best_objective {
                        best_objective = current;
                        best.assign(x);
                    }
                    if run.emit(self, f, x, CallbackEvent::StepTaken)? {
                        break 'run Termination::CallbackRequested;
                    }
                } else {
                    x.as_mut_slice()[j] = old;
                }

                if proposals >= self.init_moves {
                    temperature = self.schedule.next(temperature);
                }
                if proposals % sweep == 0 {
                    for k in 0..dims {
                        if tried[k] > 0 {
                            let rate = accepted[k] as f64 / tried[k] as f64;
                            scales[k] *= (rate / self.target_acceptance).clamp(0.5, 2.0);
                        }
                        tried[k] = 0;
                        accepted[k] = 0;
                    }
                    let gap = (current - best_objective).to_f64().unwrap_or(f64::INFINITY);
                    if gap > self.return_gap * temperature {
                        x.assign(&best);
                        current = best_objective;
                    }
                    if self.tolerance > 0.0 {
                        let gain = (sweep_start_best - best_objective).to_f64().unwrap_or(0.0);
                        stale = if gain < self.tolerance { stale + 1 } else { 0 };
                        sweep_start_best = best_objective;
                        if stale >= STALE_SWEEPS {
                            break 'run Termination::Converged;
                        }
                    }
                }
            }
            Termination::MaxIterations
        };

        x.assign(&best);
        run.finish(self, f, best, best_objective, iterations, 0, termination)
    }
}

impl OptimizerHandle for SimulatedAnnealing {
    fn name(&self) -> &'static str {
        "simulated_annealing"
    }
}
