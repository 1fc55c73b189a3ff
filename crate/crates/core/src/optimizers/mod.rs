//! Optimizers, at least one per function class.
//!
//! | optimizer | function class |
//! |---|---|
//! | [`SimulatedAnnealing`] | arbitrary |
//! | [`GradientDescent`], [`Lbfgs`] | differentiable |
//! | [`CoordinateDescent`] | partially differentiable |
//! | [`Sgd`] with any [`UpdatePolicy`] | differentiable separable |
//! | [`GridSearch`] | categorical |
//! | [`AugmentedLagrangian`] | constrained |
//!
//! Every optimizer checks its function class before touching the objective
//! and fails with a [`RequirementError`](crate::function::RequirementError)
//! naming the missing methods if the check does not pass.

mod aug_lagrangian;
mod coordinate_descent;
mod gradient_descent;
mod grid_search;
mod lbfgs;
mod line_search;
mod simulated_annealing;
mod sgd;

use std::fmt;
use std::time::Instant;

use crate::callbacks::{dispatch, Callback, CallbackEvent, OptimizerHandle, Progress, Snapshot};
use crate::function::{Counters, FullFunction, Objective};
use crate::numerics::{require, Coordinates, ElementTypeRequirement, Scalar, TypeDescriptor};
use crate::Error;

pub use aug_lagrangian::AugmentedLagrangian;
pub use coordinate_descent::{CoordinateDescent, CoordinateSelection};
pub use gradient_descent::GradientDescent;
pub use grid_search::GridSearch;
pub use lbfgs::Lbfgs;
pub use simulated_annealing::{acceptance_probability, metropolis_accept, ExponentialSchedule, SimulatedAnnealing};
pub use sgd::{PolicyState, Sgd, UpdatePolicy};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Converged,
    MaxIterations,
    CallbackRequested,
    /// The line search could not find an acceptable step.
    LineSearchFailed,
    /// An objective or gradient value was NaN or infinite.
    NumericalFailure,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Converged => "converged",
            Termination::MaxIterations => "max-iterations",
            Termination::CallbackRequested => "callback-requested",
            Termination::LineSearchFailed => "line-search-failed",
            Termination::NumericalFailure => "numerical-failure",
        })
    }
}

/// Outcome of one optimize call.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport<E> {
    pub best_coordinates: Coordinates<E>,
    /// Objective at `best_coordinates` as last computed; the type's
    /// [`sentinel`](Scalar::sentinel) if nothing was evaluated.
    pub final_objective: E,
    pub iterations: usize,
    /// Full passes over the data (separable optimizers only).
    pub epochs: usize,
    pub evaluations: usize,
    pub gradients: usize,
    pub combined: usize,
    pub termination: Termination,
    pub elapsed_seconds: f64,
}

impl<E> OptimizationReport<E> {
    pub fn callback_terminated(&self) -> bool {
        self.termination == Termination::CallbackRequested
    }
}

/// Dense floating-point coordinates, gradient of the same element type.
pub(crate) fn require_dense_float<E: Scalar>() -> Result<(), Error> {
    require(ElementTypeRequirement::DenseFloatingPoint, &[TypeDescriptor::of::<E>()])?;
    require(
        ElementTypeRequirement::SameInternalTypes,
        &[TypeDescriptor::of::<E>(), TypeDescriptor::of::<E>()],
    )?;
    Ok(())
}

/// Per-run bookkeeping: callback list, timer, counter baseline, progress.
pub(crate) struct Run<'a, 'cb, E: Scalar> {
    callbacks: &'a mut [&'cb mut dyn Callback<E>],
    started: Instant,
    baseline: Counters,
    pub progress: Progress,
}

impl<'a, 'cb, E: Scalar> Run<'a, 'cb, E> {
    pub fn new<T: Objective<Elem = E>>(
        callbacks: &'a mut [&'cb mut dyn Callback<E>],
        f: &FullFunction<T>,
        progress: Progress,
    ) -> Self {
        Self {
            callbacks,
            started: Instant::now(),
            baseline: f.counters(),
            progress,
        }
    }

    pub fn has_callbacks(&self) -> bool {
        !self.callbacks.is_empty()
    }

    /// Dispatches `event`; `Ok(true)` means a callback asked to stop.
    pub fn emit<T: Objective<Elem = E>>(
        &mut self,
        optimizer: &mut dyn OptimizerHandle,
        f: &FullFunction<T>,
        coordinates: &Coordinates<E>,
        event: CallbackEvent<'_, E>,
    ) -> Result<bool, Error> {
        if self.callbacks.is_empty() {
            return Ok(false);
        }
        let snapshot = Snapshot {
            function: f.info(),
            coordinates,
            progress: self.progress,
        };
        Ok(dispatch(self.callbacks, event, optimizer, snapshot)?.is_terminate())
    }

    /// Emits `EndOptimization` and assembles the report.
    #[allow(clippy::too_many_arguments)]
    pub fn finish<T: Objective<Elem = E>>(
        mut self,
        optimizer: &mut dyn OptimizerHandle,
        f: &FullFunction<T>,
        best_coordinates: Coordinates<E>,
        final_objective: E,
        iterations: usize,
        epochs: usize,
        termination: Termination,
    ) -> Result<OptimizationReport<E>, Error> {
        self.emit(optimizer, f, &best_coordinates, CallbackEvent::EndOptimization)?;
        let used = f.counters().since(&self.baseline);
        Ok(OptimizationReport {
            best_coordinates,
            final_objective,
            iterations,
            epochs,
            evaluations: used.evaluations,
            gradients: used.gradients,
            combined: used.combined,
            termination,
            elapsed_seconds: self.started.elapsed().as_secs_f64(),
        })
    }
}
