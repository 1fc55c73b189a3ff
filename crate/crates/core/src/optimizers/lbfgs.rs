use std::collections::VecDeque;

use crate::callbacks::{Callback, CallbackEvent, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{Coordinates, Real, Scalar};
use crate::Error;

use super::line_search::{LineSearch, SearchOutcome, SmoothObjective, WolfeParams};
use super::{require_dense_float, OptimizationReport, Run, Termination};

/// Limited-memory BFGS with a strong Wolfe line search.
#[derive(Debug, Clone, PartialEq)]
pub struct Lbfgs {
    /// Number of `(s, y)` pairs kept.
    pub memory: usize,
    pub max_iterations: usize,
    /// Stop once `max |grad f| < gradient_tolerance`.
    pub gradient_tolerance: f64,
    /// Sufficient-decrease constant `c1`.
    pub armijo: f64,
    /// Curvature constant `c2`.
    pub wolfe: f64,
    pub max_line_search_trials: usize,
    pub max_step: f64,
}

impl Default for Lbfgs {
    fn default() -> Self {
        Self {
            memory: 10,
            max_iterations: 10_000,
            gradient_tolerance: 1e-6,
            armijo: 1e-4,
            wolfe: 0.9,
            max_line_search_trials: 50,
            max_step: 1e20,
        }
    }
}

pub(crate) struct EngineOutcome<E> {
    pub objective: E,
    pub iterations: usize,
    pub termination: Termination,
}

struct History<E> {
    pairs: VecDeque<(Coordinates<E>, Coordinates<E>, E)>,
    capacity: usize,
}

impl<E: Real> History<E> {
    fn push(&mut self, s: Coordinates<E>, y: Coordinates<E>, sy: E) {
        if self.pairs.len() == self.capacity {
            self.pairs.pop_front();
        }
        self.pairs.push_back((s, y, E::one() / sy));
    }

    /// Two-loop recursion: `direction = -H grad`.
    fn direction(&self, gradient: &Coordinates<E>, direction: &mut Coordinates<E>) {
        direction.assign(gradient);
        let mut alphas = Vec::with_capacity(self.pairs.len());
        for (s, y, rho) in self.pairs.iter().rev() {
            let alpha = *rho * s.dot(direction);
            direction.axpy(-alpha, y);
            alphas.push(alpha);
        }
        if let Some((s, y, _)) = self.pairs.back() {
            direction.scale(s.dot(y) / y.dot(y));
        }
        for ((s, y, rho), alpha) in self.pairs.iter().zip(alphas.into_iter().rev()) {
            let beta = *rho * y.dot(direction);
            direction.axpy(alpha - beta, s);
        }
        direction.scale(-E::one());
    }
}

impl Lbfgs {
    pub fn new(memory: usize, max_iterations: usize, gradient_tolerance: f64) -> Self {
        Self {
            memory,
            max_iterations,
            gradient_tolerance,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.memory == 0 {
            return Err(Error::InvalidArgument("L-BFGS memory must be at least 1".into()));
        }
        if !(0.0 < self.armijo && self.armijo < self.wolfe && self.wolfe < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "line search constants must satisfy 0 < c1 < c2 < 1, got c1={} c2={}",
                self.armijo, self.wolfe
            )));
        }
        Ok(())
    }

    fn wolfe_params(&self) -> WolfeParams {
        WolfeParams {
            armijo: self.armijo,
            curvature: self.wolfe,
            max_trials: self.max_line_search_trials,
            max_step: self.max_step,
        }
    }

    /// Minimizes `problem` from `x`, leaving the last accepted iterate in `x`.
    pub(crate) fn minimize<E: Real, P: SmoothObjective<E>>(
        &self,
        problem: &mut P,
        x: &mut Coordinates<E>,
    ) -> Result<EngineOutcome<E>, Error> {
        let params = self.wolfe_params();
        let tolerance = E::lit(self.gradient_tolerance);
        let mut gradient = x.zeros_like();
        let mut direction = x.zeros_like();
        let mut search = LineSearch::new(x);
        let mut history = History {
            pairs: VecDeque::with_capacity(self.memory),
            capacity: self.memory,
        };

        let (mut objective, stop) = problem.evaluate(x, &mut gradient)?;
        let outcome = |objective, iterations, termination| EngineOutcome {
            objective,
            iterations,
            termination,
        };
        if stop {
            return Ok(outcome(objective, 0, Termination::CallbackRequested));
        }
        let mut iterations = 0;
        loop {
            if !objective.is_finite() || !gradient.is_finite() {
                return Ok(outcome(objective, iterations, Termination::NumericalFailure));
            }
            if gradient.norm_inf() < tolerance {
                return Ok(outcome(objective, iterations, Termination::Converged));
            }
            if iterations >= self.max_iterations {
                return Ok(outcome(objective, iterations, Termination::MaxIterations));
            }

            history.direction(&gradient, &mut direction);
            let mut slope = gradient.dot(&direction);
            if !(slope < E::zero()) {
                history.pairs.clear();
                history.direction(&gradient, &mut direction);
                slope = gradient.dot(&direction);
            }
            let initial_step = if history.pairs.is_empty() {
                E::one().min(E::one() / gradient.norm2())
            } else {
                E::one()
            };

            let result = search.search(problem, x, objective, slope, &direction, initial_step, &params)?;
            let (step, new_objective) = match result {
                SearchOutcome::Accepted { step, objective } => (step, objective),
                SearchOutcome::Stopped => {
                    return Ok(outcome(objective, iterations, Termination::CallbackRequested))
                }
                SearchOutcome::NonFinite => {
                    return Ok(outcome(objective, iterations, Termination::NumericalFailure))
                }
                SearchOutcome::Failed => {
                    return Ok(outcome(objective, iterations, Termination::LineSearchFailed))
                }
            };

            let s = direction.scaled(step);
            let y = search.trial_gradient.sub(&gradient);
            let sy = s.dot(&y);
            if sy > E::epsilon() * y.dot(&y) {
                history.push(s, y, sy);
            }
            x.assign(&search.trial);
            gradient.assign(&search.trial_gradient);
            objective = new_objective;
            iterations += 1;
            if problem.step_taken(x, iterations)? {
                return Ok(outcome(objective, iterations, Termination::CallbackRequested));
            }
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
        self.validate()?;

        let progress = Progress {
            max_iterations: Some(self.max_iterations),
            ..Progress::default()
        };
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, x, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }

        let engine = self.clone();
        let mut driver = Driver {
            run: &mut run,
            f: &mut *f,
            handle: &mut *self,
        };
        let outcome = engine.minimize(&mut driver, x)?;
        run.finish(
            self,
            f,
            x.clone(),
            outcome.objective,
            outcome.iterations,
            0,
            outcome.termination,
        )
    }
}

struct Driver<'r, 'a, 'cb, T: Objective> {
    run: &'r mut Run<'a, 'cb, T::Elem>,
    f: &'r mut FullFunction<T>,
    handle: &'r mut dyn OptimizerHandle,
}

impl<T> SmoothObjective<T::Elem> for Driver<'_, '_, '_, T>
where
    T: Objective,
    T::Elem: Real,
{
    fn evaluate(
        &mut self,
        x: &Coordinates<T::Elem>,
        gradient: &mut Coordinates<T::Elem>,
    ) -> Result<(T::Elem, bool), Error> {
        let objective = self.f.evaluate_with_gradient(x, gradient)?;
        let stop = self.run.emit(self.handle, self.f, x, CallbackEvent::Evaluate { objective })?
            || self.run.emit(self.handle, self.f, x, CallbackEvent::Gradient { gradient })?;
        Ok((objective, stop))
    }

    fn step_taken(&mut self, x: &Coordinates<T::Elem>, iteration: usize) -> Result<bool, Error> {
        self.run.progress.iteration = iteration;
        self.run.emit(self.handle, self.f, x, CallbackEvent::StepTaken)
    }
}

impl OptimizerHandle for Lbfgs {
    fn name(&self) -> &'static str {
        "lbfgs"
    }
}
