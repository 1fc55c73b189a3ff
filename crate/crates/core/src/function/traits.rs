//! Capability traits a user objective may implement.
//!
//! An objective implements [`Objective`] plus whichever capability traits it
//! can actually provide. Nothing else is required: the
//! [`full_function!`](crate::full_function) macro detects what is there and
//! [`FullFunction`](super::FullFunction) synthesizes what can be inferred.

use crate::numerics::{Coordinates, Scalar, SparseGradient};

/// Base trait naming the element type of an objective's coordinates.
pub trait Objective {
    type Elem: Scalar;
}

pub trait Evaluate: Objective {
    fn evaluate(&mut self, coordinates: &Coordinates<Self::Elem>) -> Self::Elem;
}

pub trait Gradient: Objective {
    /// Writes the gradient at `coordinates` into `gradient` (same shape).
    fn gradient(&mut self, coordinates: &Coordinates<Self::Elem>, gradient: &mut Coordinates<Self::Elem>);
}

/// Objective and gradient in one call, letting shared work be done once.
pub trait EvaluateWithGradient: Objective {
    fn evaluate_with_gradient(
        &mut self,
        coordinates: &Coordinates<Self::Elem>,
        gradient: &mut Coordinates<Self::Elem>,
    ) -> Self::Elem;
}

/// Number of parts `f_i` of a separable objective `f = Σ f_i`.
pub trait NumFunctions: Objective {
    fn num_functions(&self) -> usize;
}

/// Sum of the parts `begin..begin + batch_size`.
pub trait SeparableEvaluate: Objective {
    fn evaluate_batch(
        &mut self,
        coordinates: &Coordinates<Self::Elem>,
        begin: usize,
        batch_size: usize,
    ) -> Self::Elem;
}

/// Sum of the part gradients `begin..begin + batch_size`.
pub trait SeparableGradient: Objective {
    fn gradient_batch(
        &mut self,
        coordinates: &Coordinates<Self::Elem>,
        begin: usize,
        gradient: &mut Coordinates<Self::Elem>,
        batch_size: usize,
    );
}

pub trait SeparableEvaluateWithGradient: Objective {
    fn evaluate_with_gradient_batch(
        &mut self,
        coordinates: &Coordinates<Self::Elem>,
        begin: usize,
        gradient: &mut Coordinates<Self::Elem>,
        batch_size: usize,
    ) -> Self::Elem;
}

/// Gradient along the single basis direction `j`, stored sparsely.
pub trait PartialGradient: Objective {
    fn partial_gradient(
        &mut self,
        coordinates: &Coordinates<Self::Elem>,
        j: usize,
        gradient: &mut SparseGradient<Self::Elem>,
    );
}

pub trait NumFeatures: Objective {
    fn num_features(&self) -> usize;
}

/// Equality constraints `c_i(x) = 0`.
pub trait Constraints: Objective {
    fn num_constraints(&self) -> usize;

    fn evaluate_constraint(&mut self, index: usize, coordinates: &Coordinates<Self::Elem>) -> Self::Elem;

    fn gradient_constraint(
        &mut self,
        index: usize,
        coordinates: &Coordinates<Self::Elem>,
        gradient: &mut Coordinates<Self::Elem>,
    );
}

/// Allowed values per dimension of a categorical objective.
pub trait CategoricalInfo: Objective {
    fn categories(&self) -> Vec<Vec<Self::Elem>>;
}

pub trait InitialPoint: Objective {
    fn initial_point(&self) -> Coordinates<Self::Elem>;
}
