use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::Float;

use crate::callbacks::{Callback, CallbackEvent, HyperparameterError, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{Coordinates, Real, Scalar, SparseGradient};
use crate::Error;

use super::{require_dense_float, OptimizationReport, Run, Termination, DEFAULT_SEED};

/// Order in which features are visited within a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoordinateSelection {
    #[default]
    Cyclic,
    /// A fresh random permutation of the features every sweep.
    RandomPermutation,
}

/// Stochastic coordinate descent over partial gradients.
///
/// Each iteration updates the coordinates touched by one partial gradient,
/// `x <- x - step * f_j'(x)`. A sweep visits every feature once; the full
/// objective is evaluated after each sweep and the run converges when it
/// improves by less than `tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateDescent {
    pub step_size: f64,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub selection: CoordinateSelection,
    pub seed: u64,
}

impl Default for CoordinateDescent {
    fn default() -> Self {
        Self {
            step_size: 0.01,
            max_iterations: 100_000,
            tolerance: 1e-5,
            selection: CoordinateSelection::Cyclic,
            seed: DEFAULT_SEED,
        }
    }
}

impl CoordinateDescent {
    pub fn new(step_size: f64, max_iterations: usize, tolerance: f64, selection: CoordinateSelection) -> Self {
        Self {
            step_size,
            max_iterations,
            tolerance,
            selection,
            seed: DEFAULT_SEED,
        }
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
        f.check(FunctionClass::PartiallyDifferentiable)?;
        require_dense_float::<T::Elem>()?;
        if !(self.step_size > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }
        let features = f.num_features()?;
        if features == 0 {
            return Err(Error::InvalidArgument("function has zero features".into()));
        }

        let progress = Progress {
            max_iterations: Some(self.max_iterations),
            ..Progress::default()
        };
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, x, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut order: Vec<usize> = (0..features).collect();
        let mut partial = SparseGradient::new(x.len());
        let tolerance = T::Elem::lit(self.tolerance);

        let mut objective = f.evaluate(x)?;
        let mut iterations = 0;
        let termination = 'run: {
            if run.emit(self, f, x, CallbackEvent::Evaluate { objective })? {
                break 'run Termination::CallbackRequested;
            }
            loop {
                if !objective.is_finite() {
                    break 'run Termination::NumericalFailure;
                }
                if self.selection == CoordinateSelection::RandomPermutation {
                    order.shuffle(&mut rng);
                }
                for &j in &order {
                    if iterations >= self.max_iterations {
                        break 'run Termination::MaxIterations;
                    }
                    f.partial_gradient(x, j, &mut partial)?;
                    let dense = partial.to_dense();
                    if run.emit(self, f, x, CallbackEvent::Gradient { gradient: &dense })? {
                        break 'run Termination::CallbackRequested;
                    }
                    let step = T::Elem::lit(self.step_size);
                    for &(i, g) in partial.entries() {
                        if !g.is_finite() {
                            break 'run Termination::NumericalFailure;
                        }
                        x.as_mut_slice()[i] = x[i] - step * g;
                    }
                    iterations += 1;
                    run.progress.iteration = iterations;
                    if run.emit(self, f, x, CallbackEvent::StepTaken)? {
                        // Objective of the current iterate is unknown; report the last one.
                        break 'run Termination::CallbackRequested;
                    }
                }
                let next = f.evaluate(x)?;
                if run.emit(self, f, x, CallbackEvent::Evaluate { objective: next })? {
                    objective = next;
                    break 'run Termination::CallbackRequested;
                }
                let improvement = objective - next;
                objective = next;
                if improvement.abs() < tolerance {
                    break 'run Termination::Converged;
                }
            }
        };

        run.finish(self, f, x.clone(), objective, iterations, 0, termination)
    }
}

impl OptimizerHandle for CoordinateDescent {
    fn name(&self) -> &'static str {
        "coordinate_descent"
    }

    fn step_size(&self) -> Option<f64> {
        Some(self.step_size)
    }

    fn set_step_size(&mut self, value: f64) -> Result<(), HyperparameterError> {
        self.step_size = value;
        Ok(())
    }
}
