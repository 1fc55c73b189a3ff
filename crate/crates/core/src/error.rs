use thiserror::Error;

use crate::callbacks::CallbackError;
use crate::function::{CapabilityError, RequirementError};
use crate::numerics::TypeCheckError;

#[derive(Debug, Error)]
pub enum Error {
    /// The objective does not admit the function class the optimizer needs.
    #[error(transparent)]
    Requirement(#[from] RequirementError),
    #[error(transparent)]
    Capability(#[from] CapabilityError),
    #[error(transparent)]
    TypeCheck(#[from] TypeCheckError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("callback failed: {0}")]
    Callback(#[from] CallbackError),
}
