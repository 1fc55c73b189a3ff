//! Objective-function capabilities: the traits a user objective implements,
//! detection of which ones it has, inference of the rest, and the
//! diagnostics reported when an optimizer's requirements are not met.

mod capabilities;
#[doc(hidden)]
pub mod detect;
mod full;
mod traits;

pub use capabilities::{check_requirements, CapabilitySet, FunctionClass, Method, RequirementError};
pub use detect::MethodTable;
pub use full::{CapabilityError, Counters, FullFunction, FunctionInfo};
pub use traits::{
    CategoricalInfo, Constraints, Evaluate, EvaluateWithGradient, Gradient, InitialPoint,
    NumFeatures, NumFunctions, Objective, PartialGradient, SeparableEvaluate,
    SeparableEvaluateWithGradient, SeparableGradient,
};
