use std::fmt;

use thiserror::Error;

use super::capabilities::{check_requirements, CapabilitySet, FunctionClass, Method, RequirementError};
use super::detect::MethodTable;
use super::traits::Objective;
use num_traits::Zero;

use crate::numerics::{Coordinates, Scalar, SparseGradient};

/// Invocation counts of user-supplied methods.
///
/// Synthesized methods count the user calls they are built from, so a
/// synthesized `evaluate_with_gradient` on an evaluate+gradient function adds
/// one to `evaluations` and one to `gradients`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counters {
    /// `evaluate` and `evaluate_batch` calls.
    pub evaluations: usize,
    /// `gradient`, `gradient_batch` and `partial_gradient` calls.
    pub gradients: usize,
    /// `evaluate_with_gradient` and `evaluate_with_gradient_batch` calls.
    pub combined: usize,
    pub constraint_evaluations: usize,
    pub constraint_gradients: usize,
}

impl Counters {
    /// Counts accumulated since `earlier`.
    pub fn since(&self, earlier: &Counters) -> Counters {
        Counters {
            evaluations: self.evaluations - earlier.evaluations,
            gradients: self.gradients - earlier.gradients,
            combined: self.combined - earlier.combined,
            constraint_evaluations: self.constraint_evaluations - earlier.constraint_evaluations,
            constraint_gradients: self.constraint_gradients - earlier.constraint_gradients,
        }
    }
}

/// A method was called that the wrapped objective neither supplies nor allows
/// to be inferred.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{method} is not available: it is not implemented and cannot be inferred from the supplied methods ({supplied})")]
pub struct CapabilityError {
    pub method: Method,
    pub supplied: CapabilitySet,
}

/// Read-only view of a wrapped function handed to callbacks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionInfo {
    pub supplied: CapabilitySet,
    pub available: CapabilitySet,
    pub counters: Counters,
}

/// A user objective together with every method inferable from it.
///
/// Build one with [`full_function!`](crate::full_function). Calls to methods
/// that are neither supplied nor inferable return a [`CapabilityError`].
pub struct FullFunction<T: Objective> {
    inner: T,
    table: MethodTable<T>,
    supplied: CapabilitySet,
    available: CapabilitySet,
    counters: Counters,
}

type Res<V> = Result<V, CapabilityError>;

impl<T: Objective> FullFunction<T> {
    /// Wraps `inner` with an explicit method table. Prefer
    /// [`full_function!`](crate::full_function), which builds the table by
    /// detection.
    pub fn from_table(inner: T, table: MethodTable<T>) -> Self {
        let supplied = table.capabilities();
        Self {
            inner,
            table,
            supplied,
            available: supplied.inferred(),
            counters: Counters::default(),
        }
    }

    /// Methods the user type implements.
    pub fn capabilities(&self) -> CapabilitySet {
        self.supplied
    }

    /// Methods callable on this wrapper, after inference.
    pub fn available(&self) -> CapabilitySet {
        self.available
    }

    pub fn check(&self, class: FunctionClass) -> Result<(), RequirementError> {
        check_requirements(&self.supplied, class)
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn reset_counters(&mut self) {
        self.counters = Counters::default();
    }

    pub fn info(&self) -> FunctionInfo {
        FunctionInfo {
            supplied: self.supplied,
            available: self.available,
            counters: self.counters,
        }
    }

    pub fn inner(&self) -> &T {
        &self.inner
    }

    pub fn inner_mut(&mut self) -> &mut T {
        &mut self.inner
    }

    pub fn into_inner(self) -> T {
        self.inner
    }

    fn missing(&self, method: Method) -> CapabilityError {
        CapabilityError {
            method,
            supplied: self.supplied,
        }
    }

    pub fn evaluate(&mut self, x: &Coordinates<T::Elem>) -> Res<T::Elem> {
        if let Some(evaluate) = self.table.evaluate {
            self.counters.evaluations += 1;
            return Ok(evaluate(&mut self.inner, x));
        }
        if let Some(combined) = self.table.evaluate_with_gradient {
            let mut scratch = x.zeros_like();
            self.counters.combined += 1;
            return Ok(combined(&mut self.inner, x, &mut scratch));
        }
        if self.table.num_functions.is_some() && self.available.has_separable_evaluate {
            let n = self.num_functions()?;
            let mut total = T::Elem::zero();
            for i in 0..n {
                total = total + self.evaluate_batch(x, i, 1)?;
            }
            return Ok(total);
        }
        Err(self.missing(Method::Evaluate))
    }

    /// Writes the gradient at `x` into `gradient`, reshaping it to `x`'s shape
    /// if needed.
    pub fn gradient(&mut self, x: &Coordinates<T::Elem>, gradient: &mut Coordinates<T::Elem>) -> Res<()> {
        ensure_shape(x, gradient);
        if let Some(user) = self.table.gradient {
            self.counters.gradients += 1;
            user(&mut self.inner, x, gradient);
            return Ok(());
        }
        if let Some(combined) = self.table.evaluate_with_gradient {
            self.counters.combined += 1;
            combined(&mut self.inner, x, gradient);
            return Ok(());
        }
        if self.table.num_functions.is_some() && self.available.has_separable_gradient {
            let n = self.num_functions()?;
            gradient.fill(T::Elem::zero());
            let mut part = x.zeros_like();
            for i in 0..n {
                self.gradient_batch(x, i, &mut part, 1)?;
                gradient.add_assign(&part);
            }
            return Ok(());
        }
        Err(self.missing(Method::Gradient))
    }

    /// Objective and gradient together. A user-supplied combined method is
    /// called exactly once; otherwise `evaluate` runs before `gradient`.
    pub fn evaluate_with_gradient(
        &mut self,
        x: &Coordinates<T::Elem>,
        gradient: &mut Coordinates<T::Elem>,
    ) -> Res<T::Elem> {
        ensure_shape(x, gradient);
        if let Some(combined) = self.table.evaluate_with_gradient {
            self.counters.combined += 1;
            return Ok(combined(&mut self.inner, x, gradient));
        }
        let has_full_method = self.supplied.has_evaluate || self.supplied.has_gradient;
        if has_full_method && self.available.has_evaluate && self.available.has_gradient {
            let objective = self.evaluate(x)?;
            self.gradient(x, gradient)?;
            return Ok(objective);
        }
        if self.table.num_functions.is_some() && self.available.has_separable_evaluate_with_gradient {
            let n = self.num_functions()?;
            gradient.fill(T::Elem::zero());
            let mut part = x.zeros_like();
            let mut total = T::Elem::zero();
            for i in 0..n {
                total = total + self.evaluate_with_gradient_batch(x, i, &mut part, 1)?;
                gradient.add_assign(&part);
            }
            return Ok(total);
        }
        Err(self.missing(Method::EvaluateWithGradient))
    }

    pub fn num_functions(&self) -> Res<usize> {
        self.table
            .num_functions
            .map(|count| count(&self.inner))
            .ok_or_else(|| self.missing(Method::NumFunctions))
    }

    pub fn evaluate_batch(&mut self, x: &Coordinates<T::Elem>, begin: usize, batch_size: usize) -> Res<T::Elem> {
        if let Some(user) = self.table.evaluate_batch {
            self.counters.evaluations += 1;
            return Ok(user(&mut self.inner, x, begin, batch_size));
        }
        if let Some(combined) = self.table.evaluate_with_gradient_batch {
            let mut scratch = x.zeros_like();
            self.counters.combined += 1;
            return Ok(combined(&mut self.inner, x, begin, &mut scratch, batch_size));
        }
        Err(self.missing(Method::SeparableEvaluate))
    }

    pub fn gradient_batch(
        &mut self,
        x: &Coordinates<T::Elem>,
        begin: usize,
        gradient: &mut Coordinates<T::Elem>,
        batch_size: usize,
    ) -> Res<()> {
        ensure_shape(x, gradient);
        if let Some(user) = self.table.gradient_batch {
            self.counters.gradients += 1;
            user(&mut self.inner, x, begin, gradient, batch_size);
            return Ok(());
        }
        if let Some(combined) = self.table.evaluate_with_gradient_batch {
            self.counters.combined += 1;
            combined(&mut self.inner, x, begin, gradient, batch_size);
            return Ok(());
        }
        Err(self.missing(Method::SeparableGradient))
    }

    pub fn evaluate_with_gradient_batch(
        &mut self,
        x: &Coordinates<T::Elem>,
        begin: usize,
        gradient: &mut Coordinates<T::Elem>,
        batch_size: usize,
    ) -> Res<T::Elem> {
        ensure_shape(x, gradient);
        if let Some(combined) = self.table.evaluate_with_gradient_batch {
            self.counters.combined += 1;
            return Ok(combined(&mut self.inner, x, begin, gradient, batch_size));
        }
        if let (Some(evaluate), Some(grad)) = (self.table.evaluate_batch, self.table.gradient_batch) {
            self.counters.evaluations += 1;
            let objective = evaluate(&mut self.inner, x, begin, batch_size);
            self.counters.gradients += 1;
            grad(&mut self.inner, x, begin, gradient, batch_size);
            return Ok(objective);
        }
        Err(self.missing(Method::SeparableEvaluateWithGradient))
    }

    pub fn partial_gradient(
        &mut self,
        x: &Coordinates<T::Elem>,
        j: usize,
        gradient: &mut SparseGradient<T::Elem>,
    ) -> Res<()> {
        let user = self
            .table
            .partial_gradient
            .ok_or_else(|| self.missing(Method::PartialGradient))?;
        if gradient.len() != x.len() {
            *gradient = SparseGradient::new(x.len());
        } else {
            gradient.clear();
        }
        self.counters.gradients += 1;
        user(&mut self.inner, x, j, gradient);
        Ok(())
    }

    pub fn num_features(&self) -> Res<usize> {
        self.table
            .num_features
            .map(|count| count(&self.inner))
            .ok_or_else(|| self.missing(Method::NumFeatures))
    }

    pub fn num_constraints(&self) -> Res<usize> {
        self.table
            .constraints
            .map(|c| (c.count)(&self.inner))
            .ok_or_else(|| self.missing(Method::Constraints))
    }

    pub fn evaluate_constraint(&mut self, index: usize, x: &Coordinates<T::Elem>) -> Res<T::Elem> {
        let c = self.table.constraints.ok_or_else(|| self.missing(Method::Constraints))?;
        self.counters.constraint_evaluations += 1;
        Ok((c.evaluate)(&mut self.inner, index, x))
    }

    pub fn gradient_constraint(
        &mut self,
        index: usize,
        x: &Coordinates<T::Elem>,
        gradient: &mut Coordinates<T::Elem>,
    ) -> Res<()> {
        let c = self.table.constraints.ok_or_else(|| self.missing(Method::Constraints))?;
        ensure_shape(x, gradient);
        self.counters.constraint_gradients += 1;
        (c.gradient)(&mut self.inner, index, x, gradient);
        Ok(())
    }

    pub fn categories(&self) -> Res<Vec<Vec<T::Elem>>> {
        self.table
            .categories
            .map(|c| c(&self.inner))
            .ok_or_else(|| self.missing(Method::CategoricalInfo))
    }

    pub fn initial_point(&self) -> Res<Coordinates<T::Elem>> {
        self.table
            .initial_point
            .map(|p| p(&self.inner))
            .ok_or_else(|| self.missing(Method::InitialPoint))
    }
}

fn ensure_shape<E: Scalar>(x: &Coordinates<E>, gradient: &mut Coordinates<E>) {
    if gradient.shape() != x.shape() {
        *gradient = x.zeros_like();
    }
}

impl<T: Objective + fmt::Debug> fmt::Debug for FullFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FullFunction")
            .field("inner", &self.inner)
            .field("supplied", &self.supplied)
            .field("counters", &self.counters)
            .finish()
    }
}
