//! Coordinates container, element-type requirements and numeric test oracles.

mod coordinates;
mod finite_diff;
mod scalar;
mod sparse;
pub mod typecheck;

pub use coordinates::Coordinates;
pub use finite_diff::{finite_difference_gradient, max_relative_error};
pub use scalar::{ElementType, Real, Scalar};
pub use sparse::SparseGradient;
pub use typecheck::{require, ElementTypeRequirement, TypeCheckError, TypeDescriptor};
