use crate::callbacks::{Callback, CallbackEvent, OptimizerHandle, Progress};
use crate::function::{FullFunction, FunctionClass, Objective};
use crate::numerics::{Coordinates, Scalar};
use crate::Error;

use super::{OptimizationReport, Run, Termination};

/// Exhaustive search over a finite grid of candidate values.
///
/// Combinations are visited in odometer order, the last dimension changing
/// fastest, and the first combination reaching the minimum wins. Only
/// `BeginOptimization` and `EndOptimization` are emitted. Works for any
/// element type, integers included.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridSearch;

impl GridSearch {
    pub fn new() -> Self {
        GridSearch
    }

    /// Searches the grid given by the function's own category lists.
    pub fn optimize<T: Objective>(
        &mut self,
        f: &mut FullFunction<T>,
        x: &mut Coordinates<T::Elem>,
        callbacks: &mut [&mut dyn Callback<T::Elem>],
    ) -> Result<OptimizationReport<T::Elem>, Error> {
        f.check(FunctionClass::Categorical)?;
        let dimensions = f.categories()?;
        self.search(f, &dimensions, x, callbacks)
    }

    /// Searches an explicit grid; `dimensions[k]` lists the values allowed
    /// for coordinate `k`.
    pub fn optimize_over<T: Objective>(
        &mut self,
        f: &mut FullFunction<T>,
        dimensions: &[Vec<T::Elem>],
        x: &mut Coordinates<T::Elem>,
        callbacks: &mut [&mut dyn Callback<T::Elem>],
    ) -> Result<OptimizationReport<T::Elem>, Error> {
        f.check(FunctionClass::Arbitrary)?;
        self.search(f, dimensions, x, callbacks)
    }

    fn search<T: Objective>(
        &mut self,
        f: &mut FullFunction<T>,
        dimensions: &[Vec<T::Elem>],
        x: &mut Coordinates<T::Elem>,
        callbacks: &mut [&mut dyn Callback<T::Elem>],
    ) -> Result<OptimizationReport<T::Elem>, Error> {
        if dimensions.is_empty() {
            return Err(Error::InvalidArgument("grid has no dimensions".into()));
        }
        if let Some(k) = dimensions.iter().position(Vec::is_empty) {
            return Err(Error::InvalidArgument(format!("grid dimension {k} has no values")));
        }
        let points = dimensions
            .iter()
            .try_fold(1usize, |acc, d| acc.checked_mul(d.len()))
            .ok_or_else(|| Error::InvalidArgument("grid is too large".into()))?;

        let progress = Progress {
            max_iterations: Some(points),
            ..Progress::default()
        };
        let mut point = Coordinates::from_vec(dimensions.iter().map(|d| d[0]).collect());
        let mut run = Run::new(callbacks, f, progress);
        if run.emit(self, f, &point, CallbackEvent::BeginOptimization)? {
            return run.finish(self, f, x.clone(), T::Elem::sentinel(), 0, 0, Termination::CallbackRequested);
        }

        let mut index = vec![0usize; dimensions.len()];
        let mut best = point.clone();
        let mut best_objective = f.evaluate(&point)?;
        for _ in 1..points {
            for k in (0..index.len()).rev() {
                index[k] += 1;
                if index[k] < dimensions[k].len() {
                    point.as_mut_slice()[k] = dimensions[k][index[k]];
                    break;
                }
                index[k] = 0;
                point.as_mut_slice()[k] = dimensions[k][0];
            }
            let objective = f.evaluate(&point)?;
            if objective < best_objective {
                best_objective = objective;
                best.assign(&point);
            }
        }

        *x = best.clone();
        run.progress.iteration = points;
        run.finish(self, f, best, best_objective, points, 0, Termination::Converged)
    }
}

impl OptimizerHandle for GridSearch {
    fn name(&self) -> &'static str {
        "grid_search"
    }
}
