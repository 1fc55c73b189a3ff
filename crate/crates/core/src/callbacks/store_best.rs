use super::{Callback, CallbackDecision, CallbackResult, State};
use crate::numerics::{Coordinates, Scalar};

/// Keeps a copy of the coordinates with the lowest objective seen.
///
/// Observes `Evaluate` and `EndEpoch`. Once an optimizer starts emitting
/// epochs, per-batch `Evaluate` objectives are no longer comparable and only
/// epoch objectives are tracked.
#[derive(Debug, Clone)]
pub struct StoreBestCoordinates<E> {
    best: Option<(Coordinates<E>, E)>,
    epochs_seen: bool,
}

impl<E: Scalar> StoreBestCoordinates<E> {
    pub fn new() -> Self {
        Self {
            best: None,
            epochs_seen: false,
        }
    }

    /// `None` until something has been observed.
    pub fn best_coordinates(&self) -> Option<&Coordinates<E>> {
        self.best.as_ref().map(|(c, _)| c)
    }

    pub fn best_objective(&self) -> Option<E> {
        self.best.as_ref().map(|&(_, o)| o)
    }

    fn observe(&mut self, coordinates: &Coordinates<E>, objective: E) {
        let better = match &self.best {
            None => true,
            Some((_, best)) => objective < *best,
        };
        if better {
            match &mut self.best {
                Some((stored, value)) if stored.shape() == coordinates.shape() => {
                    stored.assign(coordinates);
                    *value = objective;
                }
                slot => *slot = Some((coordinates.clone(), objective)),
            }
        }
    }
}

impl<E: Scalar> Default for StoreBestCoordinates<E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<E: Scalar> Callback<E> for StoreBestCoordinates<E> {
    fn evaluate(&mut self, state: &State<'_, E>, objective: E) -> CallbackResult {
        if !self.epochs_seen {
            self.observe(state.coordinates, objective);
        }
        Ok(CallbackDecision::Continue)
    }

    fn begin_epoch(&mut self, _state: &State<'_, E>, _epoch: usize, _objective: E) -> CallbackResult {
        if !self.epochs_seen {
            self.epochs_seen = true;
            self.best = None;
        }
        Ok(CallbackDecision::Continue)
    }

    fn end_epoch(&mut self, state: &State<'_, E>, _epoch: usize, objective: E) -> CallbackResult {
        self.observe(state.coordinates, objective);
        Ok(CallbackDecision::Continue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::callbacks::testing::state;
    use crate::callbacks::Progress;

    fn feed(objectives: &[f64]) -> StoreBestCoordinates<f64> {
        let mut cb = StoreBestCoordinates::new();
        for (i, &o) in objectives.iter().enumerate() {
            let x = Coordinates::from_vec(vec![i as f64]);
            cb.evaluate(&state(&x, Progress::default()), o).unwrap();
        }
        cb
    }

    #[test]
    fn keeps_lowest() {
        let cb = feed(&[3.0, 1.0, 2.0]);
        assert_eq!(cb.best_objective(), Some(1.0));
        assert_eq!(cb.best_coordinates().unwrap().as_slice(), &[1.0]);
    }

    #[test]
    fn single_and_decreasing() {
        let cb = feed(&[5.0]);
        assert_eq!(cb.best_objective(), Some(5.0));
        let cb = feed(&[4.0, 3.0, 2.0, 1.0]);
        assert_eq!(cb.best_coordinates().unwrap().as_slice(), &[3.0]);
    }

    #[test]
    fn empty_before_observation() {
        let cb = StoreBestCoordinates::<f64>::new();
        assert!(cb.best_coordinates().is_none());
        assert!(cb.best_objective().is_none());
    }

    #[test]
    fn epoch_objectives_take_over() {
        let mut cb = StoreBestCoordinates::new();
        let x = Coordinates::from_vec(vec![0.0]);
        let st = state(&x, Progress::default());
        cb.evaluate(&st, -100.0).unwrap();
        cb.begin_epoch(&st, 0, 0.0).unwrap();
        cb.evaluate(&st, -1000.0).unwrap();
        cb.end_epoch(&st, 1, 7.0).unwrap();
        assert_eq!(cb.best_objective(), Some(7.0));
    }
}
