//! Numerical optimization over objective functions that declare only the
//! methods they have.
//!
//! An objective implements [`Objective`](function::Objective) and any subset
//! of the capability traits in [`function`]. Wrapping it with
//! [`full_function!`] detects those capabilities and synthesizes the methods
//! that follow from them; for example an objective with `evaluate` and
//! `gradient` gains `evaluate_with_gradient`, and one with only
//! `evaluate_with_gradient` gains the other two. Each optimizer checks the
//! function class it needs before running and reports the missing methods by
//! name when the check fails.
//!
//! Optimizers accept a list of [`callbacks`] that observe the run, may adjust
//! the step size after each update, and may stop the run early.
//!
//! ```
//! use optkit::callbacks::Callback;
//! use optkit::optimizers::Lbfgs;
//! use optkit::problems::Rosenbrock;
//!
//! let mut f = optkit::full_function!(Rosenbrock::<f64>::new());
//! let mut x = Rosenbrock::<f64>::initial();
//! let report = Lbfgs::default().optimize(&mut f, &mut x, &mut []).unwrap();
//! assert!(report.final_objective < 1e-8);
//! ```

pub mod callbacks;
mod error;
pub mod function;
pub mod numerics;
pub mod optimizers;
pub mod problems;

pub use error::Error;
pub use function::{CapabilitySet, FullFunction, FunctionClass};
pub use numerics::{Coordinates, Real, Scalar};
pub use optimizers::{OptimizationReport, Termination};

pub type Result<T, E = Error> = std::result::Result<T, E>;
