use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, Num, NumCast, ToPrimitive};

/// Element types a [`Coordinates`](super::Coordinates) container can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementType {
    F32,
    F64,
    I32,
    I64,
}

impl ElementType {
    pub fn is_floating_point(self) -> bool {
        matches!(self, ElementType::F32 | ElementType::F64)
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementType::F32 => "f32",
            ElementType::F64 => "f64",
            ElementType::I32 => "i32",
            ElementType::I64 => "i64",
        }
    }
}

impl Display for ElementType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Numeric element of a coordinates container.
///
/// Implemented for `f32`, `f64`, `i32` and `i64`. Arithmetic on coordinates
/// never leaves the element type it started with.
pub trait Scalar:
    Num
    + NumCast
    + ToPrimitive
    + Copy
    + PartialOrd
    + Debug
    + Display
    + Sum
    + Send
    + Sync
    + 'static
{
    const ELEMENT: ElementType;

    /// Objective reported when none was computed: NaN for floating point,
    /// the maximum value for integers.
    fn sentinel() -> Self;
}

/// Floating-point element type, required by every gradient-based optimizer.
pub trait Real: Scalar + Float + FromPrimitive {
    /// Converts a hyperparameter given in `f64` into this element type.
    fn lit(value: f64) -> Self {
        <Self as NumCast>::from(value).expect("f64 literal representable in element type")
    }
}

impl Scalar for f32 {
    const ELEMENT: ElementType = ElementType::F32;

    fn sentinel() -> Self {
        f32::NAN
    }
}
impl Scalar for f64 {
    const ELEMENT: ElementType = ElementType::F64;

    fn sentinel() -> Self {
        f64::NAN
    }
}
impl Scalar for i32 {
    const ELEMENT: ElementType = ElementType::I32;

    fn sentinel() -> Self {
        i32::MAX
    }
}
impl Scalar for i64 {
    const ELEMENT: ElementType = ElementType::I64;

    fn sentinel() -> Self {
        i64::MAX
    }
}

impl Real for f32 {}
impl Real for f64 {}
