//! Optimizer-independent callbacks.
//!
//! A callback implements any subset of the [`Callback`] handlers; the rest
//! default to doing nothing. Optimizers invoke the handlers at the points
//! listed on [`CallbackEvent`], in registration order. A handler that returns
//! [`CallbackDecision::Terminate`] ends the run: later callbacks do not see
//! the event and the optimizer makes no further calls into the objective.
//!
//! Which events an optimizer emits depends on the function class it works
//! with. All optimizers emit `BeginOptimization` and `EndOptimization`;
//! `Evaluate`/`Gradient` come from the arbitrary, differentiable,
//! partially differentiable and separable optimizers, epoch events only from
//! separable ones, constraint events only from the constrained optimizer.
//! `StepTaken` is emitted once per parameter update by every iterative
//! optimizer, and is the one place where a callback may change the step size.

mod early_stop;
mod reporting;
mod store_best;

use std::fmt;

use thiserror::Error;

use crate::function::FunctionInfo;
use crate::numerics::{Coordinates, Scalar};

pub use early_stop::EarlyStopAtMinLoss;
pub use reporting::{PrintLoss, ProgressBar};
pub use store_best::StoreBestCoordinates;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallbackDecision {
    Continue,
    Terminate,
}

impl CallbackDecision {
    pub fn is_terminate(self) -> bool {
        self == CallbackDecision::Terminate
    }
}

#[derive(Debug, Error)]
pub enum CallbackError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Hyperparameter(#[from] HyperparameterError),
    #[error("{0}")]
    Other(String),
}

pub type CallbackResult = Result<CallbackDecision, CallbackError>;

/// A callback tried to change a hyperparameter the optimizer does not have.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("optimizer {optimizer} has no adjustable {parameter}")]
pub struct HyperparameterError {
    pub optimizer: &'static str,
    pub parameter: &'static str,
}

/// The optimizer as seen from a callback.
pub trait OptimizerHandle {
    fn name(&self) -> &'static str;

    /// Current step size, for optimizers that have one.
    fn step_size(&self) -> Option<f64> {
        None
    }

    fn set_step_size(&mut self, _value: f64) -> Result<(), HyperparameterError> {
        Err(HyperparameterError {
            optimizer: self.name(),
            parameter: "step size",
        })
    }
}

/// Where a run currently stands.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Progress {
    /// Parameter updates completed so far.
    pub iteration: usize,
    pub max_iterations: Option<usize>,
    /// Epochs completed so far (separable optimizers).
    pub epoch: usize,
    pub max_epochs: Option<usize>,
}

/// What a handler can see: the optimizer, the function's capabilities and
/// call counts, and the current coordinates.
pub struct State<'a, E> {
    pub optimizer: &'a dyn OptimizerHandle,
    pub function: FunctionInfo,
    pub coordinates: &'a Coordinates<E>,
    pub progress: Progress,
}

/// Like [`State`], but the optimizer may be modified (step size).
pub struct StepState<'a, E> {
    pub optimizer: &'a mut dyn OptimizerHandle,
    pub function: FunctionInfo,
    pub coordinates: &'a Coordinates<E>,
    pub progress: Progress,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    BeginOptimization,
    EndOptimization,
    Evaluate,
    EvaluateConstraint,
    Gradient,
    GradientConstraint,
    BeginEpoch,
    EndEpoch,
    StepTaken,
}

#[derive(Debug, Clone, Copy)]
pub enum CallbackEvent<'a, E> {
    BeginOptimization,
    EndOptimization,
    /// After an objective evaluation.
    Evaluate { objective: E },
    EvaluateConstraint { index: usize, value: E },
    Gradient { gradient: &'a Coordinates<E> },
    GradientConstraint { index: usize, gradient: &'a Coordinates<E> },
    BeginEpoch { epoch: usize, objective: E },
    EndEpoch { epoch: usize, objective: E },
    StepTaken,
}

impl<E> CallbackEvent<'_, E> {
    pub fn kind(&self) -> EventKind {
        match self {
            CallbackEvent::BeginOptimization => EventKind::BeginOptimization,
            CallbackEvent::EndOptimization => EventKind::EndOptimization,
            CallbackEvent::Evaluate { .. } => EventKind::Evaluate,
            CallbackEvent::EvaluateConstraint { .. } => EventKind::EvaluateConstraint,
            CallbackEvent::Gradient { .. } => EventKind::Gradient,
            CallbackEvent::GradientConstraint { .. } => EventKind::GradientConstraint,
            CallbackEvent::BeginEpoch { .. } => EventKind::BeginEpoch,
            CallbackEvent::EndEpoch { .. } => EventKind::EndEpoch,
            CallbackEvent::StepTaken => EventKind::StepTaken,
        }
    }
}

/// Handlers for optimization events. Every handler defaults to
/// `Ok(CallbackDecision::Continue)`.
#[allow(unused_variables)]
pub trait Callback<E: Scalar> {
    fn begin_optimization(&mut self, state: &State<'_, E>) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    /// The decision returned here is ignored; the run is already over.
    fn end_optimization(&mut self, state: &State<'_, E>) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn evaluate(&mut self, state: &State<'_, E>, objective: E) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn evaluate_constraint(&mut self, state: &State<'_, E>, index: usize, value: E) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn gradient(&mut self, state: &State<'_, E>, gradient: &Coordinates<E>) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn gradient_constraint(
        &mut self,
        state: &State<'_, E>,
        index: usize,
        gradient: &Coordinates<E>,
    ) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn begin_epoch(&mut self, state: &State<'_, E>, epoch: usize, objective: E) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn end_epoch(&mut self, state: &State<'_, E>, epoch: usize, objective: E) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }

    fn step_taken(&mut self, state: &mut StepState<'_, E>) -> CallbackResult {
        Ok(CallbackDecision::Continue)
    }
}

/// The run-side half of a callback invocation: everything but the event.
pub struct Snapshot<'a, E> {
    pub function: FunctionInfo,
    pub coordinates: &'a Coordinates<E>,
    pub progress: Progress,
}

/// Delivers `event` to `callbacks` in order, stopping at the first
/// `Terminate`.
pub fn dispatch<E: Scalar>(
    callbacks: &mut [&mut dyn Callback<E>],
    event: CallbackEvent<'_, E>,
    optimizer: &mut dyn OptimizerHandle,
    snapshot: Snapshot<'_, E>,
) -> CallbackResult {
    if callbacks.is_empty() {
        return Ok(CallbackDecision::Continue);
    }
    if let CallbackEvent::StepTaken = event {
        let mut state = StepState {
            optimizer,
            function: snapshot.function,
            coordinates: snapshot.coordinates,
            progress: snapshot.progress,
        };
        for cb in callbacks.iter_mut() {
            if cb.step_taken(&mut state)?.is_terminate() {
                return Ok(CallbackDecision::Terminate);
            }
        }
        return Ok(CallbackDecision::Continue);
    }
    let state = State {
        optimizer: &*optimizer,
        function: snapshot.function,
        coordinates: snapshot.coordinates,
        progress: snapshot.progress,
    };
    for cb in callbacks.iter_mut() {
        let decision = match event {
            CallbackEvent::BeginOptimization => cb.begin_optimization(&state)?,
            CallbackEvent::EndOptimization => cb.end_optimization(&state)?,
            CallbackEvent::Evaluate { objective } => cb.evaluate(&state, objective)?,
            CallbackEvent::EvaluateConstraint { index, value } => {
                cb.evaluate_constraint(&state, index, value)?
            }
            CallbackEvent::Gradient { gradient } => cb.gradient(&state, gradient)?,
            CallbackEvent::GradientConstraint { index, gradient } => {
                cb.gradient_constraint(&state, index, gradient)?
            }
            CallbackEvent::BeginEpoch { epoch, objective } => cb.begin_epoch(&state, epoch, objective)?,
            CallbackEvent::EndEpoch { epoch, objective } => cb.end_epoch(&state, epoch, objective)?,
            CallbackEvent::StepTaken => unreachable!("handled above"),
        };
        if decision.is_terminate() {
            return Ok(CallbackDecision::Terminate);
        }
    }
    Ok(CallbackDecision::Continue)
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
