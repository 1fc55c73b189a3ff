use num_traits::Float;

use crate::callbacks::{Callback, CallbackEvent, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{Coordinates, Real, Scalar};
use crate::Error;

use super::{require_dense_float, OptimizationReport, Run, Termination};

/// Plain gradient descent, `x <- x - step * grad f(x)`.
///
/// Stops when the largest gradient component drops below `tolerance`, after
/// `max_iterations` updates, or when a callback terminates.
#[derive(Debug, Clone, PartialEq)]
pub struct GradientDescent {
    pub step_size: f64,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for GradientDescent {
    fn default() -> Self {
        Self {
            step_size: 0.01,
            max_iterations: 100_000,
            tolerance: 1e-5,
        }
    }
}

impl GradientDescent {
    pub fn new(step_size: f64, max_iterations: usize, tolerance: f64) -> Self {
        Self {
            step_size,
            max_iterations,
            tolerance,
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
        f.check(FunctionClass::Differentiable)?;
        require_dense_float::<T::Elem>()?;
        if !(self.step_size > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }

        let progress = Progress {
            max_iterations: Some(self.max_iterations),
            ..Progress::default()
        };
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, x, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }

        let tolerance = T::Elem::lit(self.tolerance);
        let mut gradient = x.zeros_like();
        let mut iterations = 0;
        let mut before_step: Option<(Coordinates<T::Elem>, T::Elem)> = None;
        let termination = loop {
            let objective = f.evaluate_with_gradient(x, &mut gradient)?;
            if run.emit(self, f, x, CallbackEvent::Evaluate { objective })?
                || run.emit(self, f, x, CallbackEvent::Gradient { gradient: &gradient })?
            {
                break (Termination::CallbackRequested, objective);
            }
            if !objective.is_finite() || !gradient.is_finite() {
                break (Termination::NumericalFailure, objective);
            }
            if gradient.norm_inf() < tolerance {
                break (Termination::Converged, objective);
            }
            if iterations >= self.max_iterations {
                break (Termination::MaxIterations, objective);
            }

            if run.has_callbacks() {
                before_step = Some((x.clone(), objective));
            }
            x.axpy(-T::Elem::lit(self.step_size), &gradient);
            iterations += 1;
            run.progress.iteration = iterations;
            if run.emit(self, f, x, CallbackEvent::StepTaken)? {
                // The new iterate has not been evaluated; report the last one that was.
                let (previous, objective) = before_step.take().expect("saved before the step");
                return run.finish(self, f, previous, objective, iterations, 0, Termination::CallbackRequested);
            }
        };

        let (termination, objective) = termination;
        run.finish(self, f, x.clone(), objective, iterations, 0, termination)
    }
}

impl OptimizerHandle for GradientDescent {
    fn name(&self) -> &'static str {
        "gradient_descent"
    }

    fn step_size(&self) -> Option<f64> {
        Some(self.step_size)
    }

    fn set_step_size(&mut self, value: f64) -> Result<(), crate::callbacks::HyperparameterError> {
        self.step_size = value;
        Ok(())
    }
}
