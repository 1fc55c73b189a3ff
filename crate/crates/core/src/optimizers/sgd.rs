use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use num_traits::{Float, One, Zero};

use crate::callbacks::{Callback, CallbackEvent, HyperparameterError, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{Coordinates, Real, Scalar};
use crate::Error;

use super::{require_dense_float, OptimizationReport, Run, Termination, DEFAULT_SEED};

/// How a batch gradient turns into a parameter update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UpdatePolicy {
    /// `x <- x - a g`
    Vanilla,
    /// `v <- mu v + g`, `x <- x - a v`
    Momentum { momentum: f64 },
    /// Momentum with the gradient taken at the lookahead point `x - a mu v`.
    Nesterov { momentum: f64 },
    Adam { beta1: f64, beta2: f64, epsilon: f64 },
    AdaMax { beta1: f64, beta2: f64, epsilon: f64 },
    AdaGrad { epsilon: f64 },
    AdaDelta { rho: f64, epsilon: f64 },
    RmsProp { rho: f64, epsilon: f64 },
    Smorms3 { epsilon: f64 },
}

impl UpdatePolicy {
    pub fn momentum() -> Self {
        UpdatePolicy::Momentum { momentum: 0.5 }
    }

    pub fn nesterov() -> Self {
        UpdatePolicy::Nesterov { momentum: 0.5 }
    }

    pub fn adam() -> Self {
        UpdatePolicy::Adam {
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }

    pub fn adamax() -> Self {
        UpdatePolicy::AdaMax {
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }

    pub fn adagrad() -> Self {
        UpdatePolicy::AdaGrad { epsilon: 1e-8 }
    }

    pub fn adadelta() -> Self {
        UpdatePolicy::AdaDelta { rho: 0.95, epsilon: 1e-6 }
    }

    pub fn rmsprop() -> Self {
        UpdatePolicy::RmsProp { rho: 0.99, epsilon: 1e-8 }
    }

    pub fn smorms3() -> Self {
        UpdatePolicy::Smorms3 { epsilon: 1e-16 }
    }

    /// Step size used when none is given.
    pub fn default_step_size(&self) -> f64 {
        match self {
            UpdatePolicy::Vanilla | UpdatePolicy::Momentum { .. } | UpdatePolicy::Nesterov { .. } => 0.01,
            UpdatePolicy::Adam { .. } => 0.001,
            UpdatePolicy::AdaMax { .. } => 0.002,
            UpdatePolicy::AdaGrad { .. } => 0.01,
            UpdatePolicy::AdaDelta { .. } => 1.0,
            UpdatePolicy::RmsProp { .. } => 0.01,
            UpdatePolicy::Smorms3 { .. } => 0.001,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            UpdatePolicy::Vanilla => "sgd",
            UpdatePolicy::Momentum { .. } => "momentum_sgd",
            UpdatePolicy::Nesterov { .. } => "nesterov_sgd",
            UpdatePolicy::Adam { .. } => "adam",
            UpdatePolicy::AdaMax { .. } => "adamax",
            UpdatePolicy::AdaGrad { .. } => "adagrad",
            UpdatePolicy::AdaDelta { .. } => "adadelta",
            UpdatePolicy::RmsProp { .. } => "rmsprop",
            UpdatePolicy::Smorms3 { .. } => "smorms3",
        }
    }
}

/// Accumulators of an [`UpdatePolicy`], shaped like the coordinates.
///
/// `first` holds the velocity or first moment (SMORMS3: running gradient
/// mean), `second` the second-moment or squared-gradient accumulator,
/// `third` the AdaDelta squared-update average or the SMORMS3 memory.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState<E> {
    pub policy: UpdatePolicy,
    /// Updates applied so far.
    pub t: u64,
    pub first: Coordinates<E>,
    pub second: Coordinates<E>,
    pub third: Coordinates<E>,
}

impl<E: Real> PolicyState<E> {
    pub fn new(policy: UpdatePolicy, like: &Coordinates<E>) -> Self {
        let third = match policy {
            UpdatePolicy::Smorms3 { .. } => Coordinates::filled(like.rows(), like.cols(), E::one()),
            _ => like.zeros_like(),
        };
        Self {
            policy,
            t: 0,
            first: like.zeros_like(),
            second: like.zeros_like(),
            third,
        }
    }

    /// Point at which the next gradient is taken: `x` itself, or the
    /// Nesterov lookahead.
    pub fn lookahead(&self, step_size: E, x: &Coordinates<E>) -> Option<Coordinates<E>> {
        match self.policy {
            UpdatePolicy::Nesterov { momentum } => {
                let mut ahead = x.clone();
                ahead.axpy(-step_size * E::lit(momentum), &self.first);
                Some(ahead)
            }
            _ => None,
        }
    }

    /// Applies one update with gradient `g` to `x`.
    pub fn apply(&mut self, step_size: E, x: &mut Coordinates<E>, g: &Coordinates<E>) {
        self.t += 1;
        let alpha = step_size;
        let one = E::one();
        let x = x.as_mut_slice();
        let g = g.as_slice();
        let first = self.first.as_mut_slice();
        let second = self.second.as_mut_slice();
        let third = self.third.as_mut_slice();
        match self.policy {
            UpdatePolicy::Vanilla => {
                for (xi, &gi) in x.iter_mut().zip(g) {
                    *xi = *xi - alpha * gi;
                }
            }
            UpdatePolicy::Momentum { momentum } | UpdatePolicy::Nesterov { momentum } => {
                let mu = E::lit(momentum);
                for ((xi, &gi), vi) in x.iter_mut().zip(g).zip(first.iter_mut()) {
                    *vi = mu * *vi + gi;
                    *xi = *xi - alpha * *vi;
                }
            }
            UpdatePolicy::Adam { beta1, beta2, epsilon } => {
                let (b1, b2, eps) = (E::lit(beta1), E::lit(beta2), E::lit(epsilon));
                let c1 = one - b1.powi(self.t as i32);
                let c2 = one - b2.powi(self.t as i32);
                for i in 0..x.len() {
                    first[i] = b1 * first[i] + (one - b1) * g[i];
                    second[i] = b2 * second[i] + (one - b2) * g[i] * g[i];
                    let m_hat = first[i] / c1;
                    let v_hat = second[i] / c2;
                    x[i] = x[i] - alpha * m_hat / (v_hat.sqrt() + eps);
                }
            }
            UpdatePolicy::AdaMax { beta1, beta2, epsilon } => {
                let (b1, b2, eps) = (E::lit(beta1), E::lit(beta2), E::lit(epsilon));
                let rate = alpha / (one - b1.powi(self.t as i32));
                for i in 0..x.len() {
                    first[i] = b1 * first[i] + (one - b1) * g[i];
                    second[i] = (b2 * second[i]).max(g[i].abs());
                    x[i] = x[i] - rate * first[i] / second[i].max(eps);
                }
            }
            UpdatePolicy::AdaGrad { epsilon } => {
                let eps = E::lit(epsilon);
                for i in 0..x.len() {
                    second[i] = second[i] + g[i] * g[i];
                    x[i] = x[i] - alpha * g[i] / (second[i].sqrt() + eps);
                }
            }
            UpdatePolicy::AdaDelta { rho, epsilon } => {
                let (rho, eps) = (E::lit(rho), E::lit(epsilon));
                for i in 0..x.len() {
                    second[i] = rho * second[i] + (one - rho) * g[i] * g[i];
                    let delta = (third[i] + eps).sqrt() / (second[i] + eps).sqrt() * g[i];
                    third[i] = rho * third[i] + (one - rho) * delta * delta;
                    x[i] = x[i] - alpha * delta;
                }
            }
            UpdatePolicy::RmsProp { rho, epsilon } => {
                let (rho, eps) = (E::lit(rho), E::lit(epsilon));
                for i in 0..x.len() {
                    second[i] = rho * second[i] + (one - rho) * g[i] * g[i];
                    x[i] = x[i] - alpha * g[i] / (second[i].sqrt() + eps);
                }
            }
            UpdatePolicy::Smorms3 { epsilon } => {
                let eps = E::lit(epsilon);
                for i in 0..x.len() {
                    let r = one / (third[i] + one);
                    first[i] = (one - r) * first[i] + r * g[i];
                    second[i] = (one - r) * second[i] + r * g[i] * g[i];
                    let zeta = first[i] * first[i] / (second[i] + eps);
                    x[i] = x[i] - g[i] * zeta.min(alpha) / (second[i].sqrt() + eps);
                    third[i] = one + third[i] * (one - zeta);
                }
            }
        }
    }
}

/// Mini-batch stochastic gradient descent over a separable objective.
///
/// One iteration is one batch update; an epoch is one pass over all parts.
/// The batch gradient is averaged over the parts in the batch.
#[derive(Debug, Clone, PartialEq)]
pub struct Sgd {
    pub step_size: f64,
    pub batch_size: usize,
    pub max_iterations: usize,
    /// Stop once consecutive epoch objectives differ by less than this.
    pub tolerance: f64,
    /// Visit parts in a fresh random order every epoch.
    pub shuffle: bool,
    pub policy: UpdatePolicy,
    pub seed: u64,
}

impl Default for Sgd {
    fn default() -> Self {
        Self::with_policy(UpdatePolicy::Vanilla)
    }
}

impl Sgd {
    pub fn with_policy(policy: UpdatePolicy) -> Self {
        Self {
            step_size: policy.default_step_size(),
            batch_size: 32,
            max_iterations: 100_000,
            tolerance: 1e-5,
            shuffle: true,
            policy,
            seed: DEFAULT_SEED,
        }
    }

    pub fn new(
        step_size: f64,
        batch_size: usize,
        max_iterations: usize,
        tolerance: f64,
        shuffle: bool,
        policy: UpdatePolicy,
    ) -> Self {
        Self {
            step_size,
            batch_size,
            max_iterations,
            tolerance,
            shuffle,
            policy,
            seed: DEFAULT_SEED,
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
        f.check(FunctionClass::DifferentiableSeparable)?;
        require_dense_float::<T::Elem>()?;
        if self.batch_size == 0 {
            return Err(Error::InvalidArgument("batch size must be at least 1".into()));
        }
        if !(self.step_size > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "step size must be positive, got {}",
                self.step_size
            )));
        }
        let parts = f.num_functions()?;
        if parts == 0 {
            return Err(Error::InvalidArgument("separable function has zero parts".into()));
        }

        let batches_per_epoch = parts.div_ceil(self.batch_size);
        let progress = Progress {
            max_iterations: Some(self.max_iterations),
            max_epochs: Some(self.max_iterations.div_ceil(batches_per_epoch)),
            ..Progress::default()
        };
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, x, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut order: Vec<usize> = (0..parts).collect();
        let mut state = PolicyState::new(self.policy, x);
        let mut gradient = x.zeros_like();
        let mut part_gradient = x.zeros_like();
        let tolerance = T::Elem::lit(self.tolerance);

        let mut iterations = 0;
        let mut epochs = 0;
        let mut previous: Option<T::Elem> = None;
        let termination = 'epochs: loop {
            if iterations >= self.max_iterations {
                break Termination::MaxIterations;
            }
            if self.shuffle {
                order.shuffle(&mut rng);
            }
            let carried = previous.unwrap_or_else(T::Elem::zero);
            if run.emit(self, f, x, CallbackEvent::BeginEpoch { epoch: epochs + 1, objective: carried })? {
                break Termination::CallbackRequested;
            }

            let mut epoch_objective = T::Elem::zero();
            for start in (0..parts).step_by(self.batch_size) {
                if iterations >= self.max_iterations {
                    break 'epochs Termination::MaxIterations;
                }
                let size = self.batch_size.min(parts - start);
                let step = T::Elem::lit(self.step_size);
                let ahead = state.lookahead(step, x);
                let at = ahead.as_ref().unwrap_or(x);

                let objective = if self.shuffle {
                    let mut sum = T::Elem::zero();
                    gradient.fill(T::Elem::zero());
                    for &part in &order[start..start + size] {
                        sum = sum + f.evaluate_with_gradient_batch(at, part, &mut part_gradient, 1)?;
                        gradient.add_assign(&part_gradient);
                    }
                    sum
                } else {
                    f.evaluate_with_gradient_batch(at, start, &mut gradient, size)?
                };
                if run.emit(self, f, at, CallbackEvent::Evaluate { objective })?
                    || run.emit(self, f, at, CallbackEvent::Gradient { gradient: &gradient })?
                {
                    break 'epochs Termination::CallbackRequested;
                }
                if !objective.is_finite() || !gradient.is_finite() {
                    break 'epochs Termination::NumericalFailure;
                }
                epoch_objective = epoch_objective + objective;

                gradient.scale(T::Elem::one() / T::Elem::lit(size as f64));
                state.apply(step, x, &gradient);
                iterations += 1;
                run.progress.iteration = iterations;
                if run.emit(self, f, x, CallbackEvent::StepTaken)? {
                    break 'epochs Termination::CallbackRequested;
                }
            }

            epochs += 1;
            run.progress.epoch = epochs;
            if run.emit(self, f, x, CallbackEvent::EndEpoch { epoch: epochs, objective: epoch_objective })? {
                previous = Some(epoch_objective);
                break Termination::CallbackRequested;
            }
            if let Some(last) = previous {
                if (epoch_objective - last).abs() < tolerance {
                    previous = Some(epoch_objective);
                    break Termination::Converged;
                }
            }
            previous = Some(epoch_objective);
        };

        // A terminating callback forbids further evaluations, so the report
        // then carries the last epoch objective instead of a fresh one.
        let objective = match termination {
            Termination::CallbackRequested | Termination::NumericalFailure => {
                previous.unwrap_or_else(T::Elem::sentinel)
            }
            _ => f.evaluate(x)?,
        };
        run.finish(self, f, x.clone(), objective, iterations, epochs, termination)
    }
}

impl OptimizerHandle for Sgd {
    fn name(&self) -> &'static str {
        self.policy.name()
    }

    fn step_size(&self) -> Option<f64> {
        Some(self.step_size)
    }

    fn set_step_size(&mut self, value: f64) -> Result<(), HyperparameterError> {
        self.step_size = value;
        Ok(())
    }
}
