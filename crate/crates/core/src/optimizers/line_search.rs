//! Strong Wolfe line search with cubic interpolation in the zoom phase.

use crate::numerics::{Coordinates, Real};
use crate::Error;

/// A smooth objective as the line search and L-BFGS engine see it.
pub(crate) trait SmoothObjective<E: Real> {
    /// Objective and gradient at `x`. The flag is `true` when a callback
    /// asked to stop after this evaluation.
    fn evaluate(&mut self, x: &Coordinates<E>, gradient: &mut Coordinates<E>) -> Result<(E, bool), Error>;

    /// Called after each accepted step; `true` means stop.
    fn step_taken(&mut self, x: &Coordinates<E>, iteration: usize) -> Result<bool, Error>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct WolfeParams {
    pub armijo: f64,
    pub curvature: f64,
    pub max_trials: usize,
    pub max_step: f64,
}

pub(crate) enum SearchOutcome<E> {
    /// `trial` / `trial_gradient` hold the accepted point.
    Accepted { step: E, objective: E },
    Failed,
    Stopped,
    NonFinite,
}

/// Scratch buffers reused across searches.
pub(crate) struct LineSearch<E> {
    pub trial: Coordinates<E>,
    pub trial_gradient: Coordinates<E>,
}

struct Sample<E> {
    step: E,
    value: E,
    slope: E,
}

impl<E: Real> LineSearch<E> {
    pub fn new(like: &Coordinates<E>) -> Self {
        Self {
            trial: like.zeros_like(),
            trial_gradient: like.zeros_like(),
        }
    }

    fn sample<P: SmoothObjective<E>>(
        &mut self,
        problem: &mut P,
        x: &Coordinates<E>,
        direction: &Coordinates<E>,
        step: E,
    ) -> Result<Option<Sample<E>>, Error> {
        self.trial.assign(x);
        self.trial.axpy(step, direction);
        let (value, stop) = problem.evaluate(&self.trial, &mut self.trial_gradient)?;
        if stop {
            return Ok(None);
        }
        let slope = self.trial_gradient.dot(direction);
        Ok(Some(Sample { step, value, slope }))
    }

    /// Searches along `direction` from `x` (objective `value`, directional
    /// derivative `slope < 0`) for a step satisfying the strong Wolfe
    /// conditions.
    #[allow(clippy::too_many_arguments)]
    pub fn search<P: SmoothObjective<E>>(
        &mut self,
        problem: &mut P,
        x: &Coordinates<E>,
        value: E,
        slope: E,
        direction: &Coordinates<E>,
        initial_step: E,
        params: &WolfeParams,
    ) -> Result<SearchOutcome<E>, Error> {
        let c1 = E::lit(params.armijo);
        let c2 = E::lit(params.curvature);
        let max_step = E::lit(params.max_step);
        let sufficient = |s: &Sample<E>| s.value <= value + c1 * s.step * slope;
        let curvature_ok = |s: &Sample<E>| s.slope.abs() <= -c2 * slope;

        let mut previous = Sample {
            step: E::zero(),
            value,
            slope,
        };
        let mut step = initial_step;
        let mut trials = 0;

        while trials < params.max_trials {
            trials += 1;
            let Some(current) = self.sample(problem, x, direction, step)? else {
                return Ok(SearchOutcome::Stopped);
            };
            if !current.value.is_finite() || !current.slope.is_finite() {
                return Ok(SearchOutcome::NonFinite);
            }
            if !sufficient(&current) || (trials > 1 && current.value >= previous.value) {
                return self.zoom(problem, x, value, slope, direction, previous, current, trials, params);
            }
            if curvature_ok(&current) {
                return Ok(SearchOutcome::Accepted {
                    step: current.step,
                    objective: current.value,
                });
            }
            if current.slope >= E::zero() {
                return self.zoom(problem, x, value, slope, direction, current, previous, trials, params);
            }
            if current.step >= max_step {
                break;
            }
            previous = current;
            step = (step + step).min(max_step);
        }
        Ok(SearchOutcome::Failed)
    }

    #[allow(clippy::too_many_arguments)]
    fn zoom<P: SmoothObjective<E>>(
        &mut self,
        problem: &mut P,
        x: &Coordinates<E>,
        value: E,
        slope: E,
        direction: &Coordinates<E>,
        mut lo: Sample<E>,
        mut hi: Sample<E>,
        mut trials: usize,
        params: &WolfeParams,
    ) -> Result<SearchOutcome<E>, Error> {
        let c1 = E::lit(params.armijo);
        let c2 = E::lit(params.curvature);
        while trials < params.max_trials {
            let width = (hi.step - lo.step).abs();
            if width <= E::epsilon() * lo.step.abs().max(E::one()) {
                break;
            }
            trials += 1;
            let step = interpolate(&lo, &hi);
            let Some(current) = self.sample(problem, x, direction, step)? else {
                return Ok(SearchOutcome::Stopped);
            };
            if !current.value.is_finite() || !current.slope.is_finite() {
                return Ok(SearchOutcome::NonFinite);
            }
            if current.value > value + c1 * current.step * slope || current.value >= lo.value {
                hi = current;
            } else {
                if current.slope.abs() <= -c2 * slope {
                    return Ok(SearchOutcome::Accepted {
                        step: current.step,
                        objective: current.value,
                    });
                }
                if current.slope * (hi.step - lo.step) >= E::zero() {
                    hi = lo;
                }
                lo = current;
            }
        }
        Ok(SearchOutcome::Failed)
    }
}

/// Minimizer of the cubic through two samples, kept at least 10% of the
/// bracket width away from either end; bisection when the cubic has no
/// usable minimizer.
fn interpolate<E: Real>(lo: &Sample<E>, hi: &Sample<E>) -> E {
    let a = lo.step.min(hi.step);
    let b = lo.step.max(hi.step);
    let margin = E::lit(0.1) * (b - a);
    let mid = (a + b) * E::lit(0.5);

    let three = E::lit(3.0);
    let two = E::lit(2.0);
    let d1 = lo.slope + hi.slope - three * (lo.value - hi.value) / (lo.step - hi.step);
    let radicand = d1 * d1 - lo.slope * hi.slope;
    if !(radicand >= E::zero()) {
        return mid;
    }
    let d2 = (hi.step - lo.step).signum() * radicand.sqrt();
    let denominator = hi.slope - lo.slope + two * d2;
    if denominator == E::zero() {
        return mid;
    }
    let candidate = hi.step - (hi.step - lo.step) * (hi.slope + d2 - d1) / denominator;
    if !candidate.is_finite() {
        return mid;
    }
    candidate.max(a + margin).min(b - margin)
}
