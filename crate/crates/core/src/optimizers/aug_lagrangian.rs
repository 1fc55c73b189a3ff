use num_traits::{Float, ToPrimitive, Zero};

use crate::callbacks::{Callback, CallbackEvent, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{Coordinates, Real, Scalar};
use crate::Error;

use super::lbfgs::Lbfgs;
use super::line_search::SmoothObjective;
use super::{require_dense_float, OptimizationReport, Run, Termination};

/// Augmented Lagrangian method for equality constraints `c_i(x) = 0`.
///
/// Each outer iteration minimizes
/// `L(x) = f(x) + sum lambda_i c_i(x) + sigma/2 sum c_i(x)^2` with L-BFGS,
/// then updates `lambda_i <- lambda_i + sigma c_i(x)`. The penalty `sigma`
/// grows by `penalty_growth` whenever the largest violation fails to shrink
/// to a quarter of its previous value.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedLagrangian {
    pub inner: Lbfgs,
    pub max_outer_iterations: usize,
    pub constraint_tolerance: f64,
    pub initial_penalty: f64,
    pub penalty_growth: f64,
    violation_history: Vec<f64>,
}

impl Default for AugmentedLagrangian {
    fn default() -> Self {
        Self {
            inner: Lbfgs::default(),
            max_outer_iterations: 100,
            constraint_tolerance: 1e-7,
            initial_penalty: 10.0,
            penalty_growth: 10.0,
            violation_history: Vec::new(),
        }
    }
}

impl AugmentedLagrangian {
    pub fn new(inner: Lbfgs, max_outer_iterations: usize, constraint_tolerance: f64) -> Self {
        Self {
            inner,
            max_outer_iterations,
            constraint_tolerance,
            ..Self::default()
        }
    }

    /// `max_i |c_i(x)|` after each outer iteration of the last run.
    pub fn violation_history(&self) -> &[f64] {
        &self.violation_history
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
        f.check(FunctionClass::Constrained)?;
        require_dense_float::<T::Elem>()?;
        if !(self.initial_penalty > 0.0 && self.penalty_growth >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "penalty must be positive and non-decreasing, got initial {} growth {}",
                self.initial_penalty, self.penalty_growth
            )));
        }
        if self.inner.memory == 0 {
            return Err(Error::InvalidArgument("L-BFGS memory must be at least 1".into()));
        }
        self.violation_history.clear();
        let constraints = f.num_constraints()?;

        let progress = Progress {
            max_iterations: Some(self.max_outer_iterations.saturating_mul(self.inner.max_iterations)),
            ..Progress::default()
        };
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, x, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }

        let engine = self.inner.clone();
        let mut multipliers = vec![T::Elem::zero(); constraints];
        let mut values = vec![T::Elem::zero(); constraints];
        let mut penalty = T::Elem::lit(self.initial_penalty);
        let growth = T::Elem::lit(self.penalty_growth);
        let mut previous_violation = T::Elem::infinity();
        let mut iterations = 0;
        let mut history = Vec::new();

        let termination = 'outer: {
            for _ in 0..self.max_outer_iterations {
                let mut lagrangian = Penalized {
                    run: &mut run,
                    f: &mut *f,
                    handle: &mut *self,
                    multipliers: &multipliers,
                    penalty,
                    offset: iterations,
                    scratch: x.zeros_like(),
                };
                let inner = engine.minimize(&mut lagrangian, x)?;
                iterations += inner.iterations;
                match inner.termination {
                    Termination::CallbackRequested => break 'outer Termination::CallbackRequested,
                    Termination::NumericalFailure => break 'outer Termination::NumericalFailure,
                    _ => {}
                }
                if lagrangian.constraint_values(x, &mut values)? {
                    break 'outer Termination::CallbackRequested;
                }

                let violation = values.iter().fold(T::Elem::zero(), |m, c| m.max(c.abs()));
                history.push(violation.to_f64().unwrap_or(f64::NAN));
                if !violation.is_finite() {
                    break 'outer Termination::NumericalFailure;
                }
                if violation < T::Elem::lit(self.constraint_tolerance)
                    && inner.termination != Termination::MaxIterations
                {
                    break 'outer Termination::Converged;
                }
                update_multipliers(&mut multipliers, &values, penalty);
                if violation > T::Elem::lit(0.25) * previous_violation {
                    penalty = penalty * growth;
                }
                previous_violation = violation;
            }
            Termination::MaxIterations
        };

        self.violation_history = history;
        let objective = match termination {
            Termination::CallbackRequested => T::Elem::sentinel(),
            _ => f.evaluate(x)?,
        };
        run.finish(self, f, x.clone(), objective, iterations, 0, termination)
    }
}

/// `lambda c + sigma/2 c^2`, one constraint's share of the Lagrangian.
fn penalty_term<E: Real>(lambda: E, penalty: E, c: E) -> E {
    lambda * c + E::lit(0.5) * penalty * c * c
}

/// `lambda_i <- lambda_i + sigma c_i`.
fn update_multipliers<E: Real>(multipliers: &mut [E], values: &[E], penalty: E) {
    for (lambda, &c) in multipliers.iter_mut().zip(values) {
        *lambda = *lambda + penalty * c;
    }
}

struct Penalized<'r, 'a, 'cb, T: Objective> {
    run: &'r mut Run<'a, 'cb, T::Elem>,
    f: &'r mut FullFunction<T>,
    handle: &'r mut dyn OptimizerHandle,
    multipliers: &'r [T::Elem],
    penalty: T::Elem,
    offset: usize,
    scratch: Coordinates<T::Elem>,
}

impl<T> Penalized<'_, '_, '_, T>
where
    T: Objective,
    T::Elem: Real,
{
    /// Fills `values` with `c_i(x)`; `true` if a callback asked to stop.
    fn constraint_values(&mut self, x: &Coordinates<T::Elem>, values: &mut [T::Elem]) -> Result<bool, Error> {
        for (i, value) in values.iter_mut().enumerate() {
            *value = self.f.evaluate_constraint(i, x)?;
            let event = CallbackEvent::EvaluateConstraint { index: i, value: *value };
            if self.run.emit(self.handle, self.f, x, event)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl<T> SmoothObjective<T::Elem> for Penalized<'_, '_, '_, T>
where
    T: Objective,
    T::Elem: Real,
{
    fn evaluate(
        &mut self,
        x: &Coordinates<T::Elem>,
        gradient: &mut Coordinates<T::Elem>,
    ) -> Result<(T::Elem, bool), Error> {
        let mut value = self.f.evaluate_with_gradient(x, gradient)?;
        for (i, &lambda) in self.multipliers.iter().enumerate() {
            let c = self.f.evaluate_constraint(i, x)?;
            if self.run.emit(self.handle, self.f, x, CallbackEvent::EvaluateConstraint { index: i, value: c })? {
                return Ok((value, true));
            }
            self.f.gradient_constraint(i, x, &mut self.scratch)?;
            let event = CallbackEvent::GradientConstraint {
                index: i,
                gradient: &self.scratch,
            };
            if self.run.emit(self.handle, self.f, x, event)? {
                return Ok((value, true));
            }
            value = value + penalty_term(lambda, self.penalty, c);
            gradient.axpy(lambda + self.penalty * c, &self.scratch);
        }
        Ok((value, false))
    }

    fn step_taken(&mut self, x: &Coordinates<T::Elem>, iteration: usize) -> Result<bool, Error> {
        self.run.progress.iteration = self.offset + iteration;
        self.run.emit(self.handle, self.f, x, CallbackEvent::StepTaken)
    }
}

impl OptimizerHandle for AugmentedLagrangian {
    fn name(&self) -> &'static str {
        "augmented_lagrangian"
    }
}
