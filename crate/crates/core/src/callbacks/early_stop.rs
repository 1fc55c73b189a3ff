use super::{Callback, CallbackDecision, CallbackResult, State};
use crate::numerics::Scalar;

/// Stops the run once the epoch objective has failed to improve on its best
/// value for `patience` consecutive epochs.
#[derive(Debug, Clone)]
pub struct EarlyStopAtMinLoss {
    patience: usize,
    best: Option<f64>,
    stale_epochs: usize,
}

impl EarlyStopAtMinLoss {
    pub const DEFAULT_PATIENCE: usize = 10;

    pub fn new(patience: usize) -> Self {
        Self {
            patience,
            best: None,
            stale_epochs: 0,
        }
    }

    pub fn best_objective(&self) -> Option<f64> {
        self.best
    }

    /// Feeds one epoch objective; returns the decision the callback would make.
    pub fn observe(&mut self, objective: f64) -> CallbackDecision {
        match self.best {
            Some(best) if objective >= best => {
                self.stale_epochs += 1;
                if self.stale_epochs >= self.patience {
                    return CallbackDecision::Terminate;
                }
            }
            _ => {
                self.best = Some(objective);
                self.stale_epochs = 0;
            }
        }
        CallbackDecision::Continue
    }
}

impl Default for EarlyStopAtMinLoss {
    fn default() -> Self {
        Self::new(Self::DEFAULT_PATIENCE)
    }
}

impl<E: Scalar> Callback<E> for EarlyStopAtMinLoss {
    fn end_epoch(&mut self, _state: &State<'_, E>, _epoch: usize, objective: E) -> CallbackResult {
        Ok(self.observe(objective.to_f64().unwrap_or(f64::NAN)))
    }
}
