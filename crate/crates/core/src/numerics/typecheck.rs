//! Element-type requirements checked at the top of an optimizer run.
//!
//! Generic code over [`Real`](super::Real) already rules out most mistakes at
//! compile time. These checks cover the rest (mixed element types between the
//! coordinates and gradient, non-dense storage) and produce a readable message
//! instead of a failure deep inside an optimizer.
//!
//! Setting the environment variable [`DISABLE_TYPE_CHECKS_ENV`] or calling
//! [`set_type_checks_disabled`] turns failed checks into logged warnings.

use std::sync::atomic::{AtomicU8, Ordering};

use thiserror::Error;

use super::scalar::{ElementType, Scalar};

/// Environment variable that disables element-type checks when set to
/// anything other than `0` or an empty string.
pub const DISABLE_TYPE_CHECKS_ENV: &str = "OPTKIT_DISABLE_TYPE_CHECKS";

// 0 = not yet resolved from the environment, 1 = enabled, 2 = disabled
static TYPE_CHECKS: AtomicU8 = AtomicU8::new(0);

pub fn set_type_checks_disabled(disabled: bool) {
    TYPE_CHECKS.store(if disabled { 2 } else { 1 }, Ordering::SeqCst);
}

pub fn type_checks_disabled() -> bool {
    match TYPE_CHECKS.load(Ordering::SeqCst) {
        1 => false,
        2 => true,
        _ => {
            let disabled = std::env::var(DISABLE_TYPE_CHECKS_ENV)
                .map(|v| !v.is_empty() && v != "0")
                .unwrap_or(false);
            let _ = TYPE_CHECKS.compare_exchange(
                0,
                if disabled { 2 } else { 1 },
                Ordering::SeqCst,
                Ordering::SeqCst,
            );
            TYPE_CHECKS.load(Ordering::SeqCst) == 2
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementTypeRequirement {
    /// Every element type is `f32` or `f64`.
    FloatingPoint,
    /// All element types are identical (coordinates vs. gradient).
    SameInternalTypes,
    /// Floating point and densely stored.
    DenseFloatingPoint,
}

/// Element type plus storage layout of one container.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TypeDescriptor {
    pub element: ElementType,
    pub dense: bool,
}

impl TypeDescriptor {
    pub fn dense(element: ElementType) -> Self {
        Self {
            element,
            dense: true,
        }
    }

    pub fn sparse(element: ElementType) -> Self {
        Self {
            element,
            dense: false,
        }
    }

    pub fn of<E: Scalar>() -> Self {
        Self::dense(E::ELEMENT)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct TypeCheckError {
    pub requirement: ElementTypeRequirement,
    pub offending: Vec<TypeDescriptor>,
    pub message: String,
}

/// Checks `requirement` against `types`.
///
/// Returns `Ok(())` when the requirement holds, or when checks are disabled,
/// in which case the failure is logged at warning level instead.
pub fn require(
    requirement: ElementTypeRequirement,
    types: &[TypeDescriptor],
) -> Result<(), TypeCheckError> {
    let failure = match requirement {
        ElementTypeRequirement::FloatingPoint => {
            let bad: Vec<_> = types
                .iter()
                .copied()
                .filter(|t| !t.element.is_floating_point())
                .collect();
            (!bad.is_empty()).then(|| {
                let message = format!(
                    "element type {} is not supported here: the element type must be f32 or f64. \
                     Set {DISABLE_TYPE_CHECKS_ENV}=1 to try anyway, at your own risk.",
                    join(&bad)
                );
                (bad, message)
            })
        }
        ElementTypeRequirement::SameInternalTypes => {
            let mismatch = types
                .first()
                .is_some_and(|first| types.iter().any(|t| t.element != first.element));
            mismatch.then(|| {
                let message = format!(
                    "element types of the coordinates and gradient must be identical, got {}. \
                     Mixed element types are not known to work; set {DISABLE_TYPE_CHECKS_ENV}=1 \
                     to try anyway, at your own risk.",
                    join(types)
                );
                (types.to_vec(), message)
            })
        }
        ElementTypeRequirement::DenseFloatingPoint => {
            let bad: Vec<_> = types
                .iter()
                .copied()
                .filter(|t| !t.element.is_floating_point() || !t.dense)
                .collect();
            (!bad.is_empty()).then(|| {
                let message = format!(
                    "{} does not satisfy the requirement: storage must be dense with element type \
                     f32 or f64. Set {DISABLE_TYPE_CHECKS_ENV}=1 to try anyway, at your own risk.",
                    join(&bad)
                );
                (bad, message)
            })
        }
    };

    match failure {
        None => Ok(()),
        Some((offending, message)) => {
            if type_checks_disabled() {
                log::warn!("type check disabled: {message}");
                Ok(())
            } else {
                Err(TypeCheckError {
                    requirement,
                    offending,
                    message,
                })
            }
        }
    }
}

fn join(types: &[TypeDescriptor]) -> String {
    types
        .iter()
        .map(|t| {
            if t.dense {
                t.element.name().to_string()
            } else {
                format!("sparse {}", t.element)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
