//! Capability detection.
//!
//! Detection is resolved at compile time with autoref-based method
//! resolution: for every capability trait there is a probe method implemented
//! twice, once on `Probe<T>` (only when `T` implements the trait) and once on
//! `&Probe<T>` (always, returning `None`). Calling `(&probe).method()` picks
//! the first when it applies. This only works where `T` is a concrete type,
//! which is why detection is exposed through the
//! [`detect_capabilities!`](crate::detect_capabilities) and
//! [`full_function!`](crate::full_function) macros rather than generic
//! functions. No user method is ever invoked during detection.

use std::fmt;
use std::marker::PhantomData;

use super::capabilities::CapabilitySet;
use super::traits::Objective;
use crate::numerics::{Coordinates, SparseGradient};

type Elem<T> = <T as Objective>::Elem;

pub type EvaluateFn<T> = fn(&mut T, &Coordinates<Elem<T>>) -> Elem<T>;
pub type GradientFn<T> = fn(&mut T, &Coordinates<Elem<T>>, &mut Coordinates<Elem<T>>);
pub type EvaluateWithGradientFn<T> =
    fn(&mut T, &Coordinates<Elem<T>>, &mut Coordinates<Elem<T>>) -> Elem<T>;
pub type CountFn<T> = fn(&T) -> usize;
pub type EvaluateBatchFn<T> = fn(&mut T, &Coordinates<Elem<T>>, usize, usize) -> Elem<T>;
pub type GradientBatchFn<T> =
    fn(&mut T, &Coordinates<Elem<T>>, usize, &mut Coordinates<Elem<T>>, usize);
pub type EvaluateWithGradientBatchFn<T> =
    fn(&mut T, &Coordinates<Elem<T>>, usize, &mut Coordinates<Elem<T>>, usize) -> Elem<T>;
pub type PartialGradientFn<T> = fn(&mut T, &Coordinates<Elem<T>>, usize, &mut SparseGradient<Elem<T>>);
pub type ConstraintCountFn<T> = fn(&T) -> usize;
pub type EvaluateConstraintFn<T> = fn(&mut T, usize, &Coordinates<Elem<T>>) -> Elem<T>;
pub type GradientConstraintFn<T> = fn(&mut T, usize, &Coordinates<Elem<T>>, &mut Coordinates<Elem<T>>);
pub type CategoriesFn<T> = fn(&T) -> Vec<Vec<Elem<T>>>;
pub type InitialPointFn<T> = fn(&T) -> Coordinates<Elem<T>>;

/// The three constraint methods travel together.
pub struct ConstraintFns<T: Objective> {
    pub count: ConstraintCountFn<T>,
    pub evaluate: EvaluateConstraintFn<T>,
    pub gradient: GradientConstraintFn<T>,
}

impl<T: Objective> Clone for ConstraintFns<T> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<T: Objective> Copy for ConstraintFns<T> {}

/// Entry points of the methods a user type supplies.
pub struct MethodTable<T: Objective> {
    pub evaluate: Option<EvaluateFn<T>>,
    pub gradient: Option<GradientFn<T>>,
    pub evaluate_with_gradient: Option<EvaluateWithGradientFn<T>>,
    pub num_functions: Option<CountFn<T>>,
    pub evaluate_batch: Option<EvaluateBatchFn<T>>,
    pub gradient_batch: Option<GradientBatchFn<T>>,
    pub evaluate_with_gradient_batch: Option<EvaluateWithGradientBatchFn<T>>,
    pub partial_gradient: Option<PartialGradientFn<T>>,
    pub num_features: Option<CountFn<T>>,
    pub constraints: Option<ConstraintFns<T>>,
    pub categories: Option<CategoriesFn<T>>,
    pub initial_point: Option<InitialPointFn<T>>,
}

impl<T: Objective> Clone for MethodTable<T> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<T: Objective> Copy for MethodTable<T> {}

impl<T: Objective> MethodTable<T> {
    /// Table with no methods at all.
    pub fn empty() -> Self {
        Self {
            evaluate: None,
            gradient: None,
            evaluate_with_gradient: None,
            num_functions: None,
            evaluate_batch: None,
            gradient_batch: None,
            evaluate_with_gradient_batch: None,
            partial_gradient: None,
            num_features: None,
            constraints: None,
            categories: None,
            initial_point: None,
        }
    }

    pub fn capabilities(&self) -> CapabilitySet {
        CapabilitySet {
            has_evaluate: self.evaluate.is_some(),
            has_gradient: self.gradient.is_some(),
            has_evaluate_with_gradient: self.evaluate_with_gradient.is_some(),
            has_separable_evaluate: self.evaluate_batch.is_some(),
            has_separable_gradient: self.gradient_batch.is_some(),
            has_separable_evaluate_with_gradient: self.evaluate_with_gradient_batch.is_some(),
            has_num_functions: self.num_functions.is_some(),
            has_partial_gradient: self.partial_gradient.is_some(),
            has_num_features: self.num_features.is_some(),
            has_constraints: self.constraints.is_some(),
            has_categorical_info: self.categories.is_some(),
            has_initial_point: self.initial_point.is_some(),
        }
    }
}

impl<T: Objective> fmt::Debug for MethodTable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MethodTable").field(&self.capabilities()).finish()
    }
}

/// Zero-sized marker used for method resolution; see the module docs.
pub struct Probe<T>(PhantomData<fn() -> T>);

impl<T> Probe<T> {
    pub fn of(_value: &T) -> Self {
        Probe(PhantomData)
    }
}

macro_rules! probe {
    ($yes:ident, $no:ident, $method:ident, $bound:path, $ty:ty, $value:expr) => {
        #[doc(hidden)]
        pub trait $yes<T: Objective> {
            fn $method(&self) -> Option<$ty>;
        }
        impl<T: $bound> $yes<T> for Probe<T> {
            fn $method(&self) -> Option<$ty> {
                Some($value)
            }
        }
        #[doc(hidden)]
        pub trait $no<T: Objective> {
            fn $method(&self) -> Option<$ty> {
                None
            }
        }
        impl<T: Objective> $no<T> for &Probe<T> {}
    };
}

#[doc(hidden)]
pub mod probes {
    use super::*;
    use crate::function::traits::*;

    probe!(HasEvaluate, NoEvaluate, probe_evaluate, Evaluate, EvaluateFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>| f.evaluate(x));
    probe!(HasGradient, NoGradient, probe_gradient, Gradient, GradientFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>, g: &mut Coordinates<T::Elem>| f.gradient(x, g));
    probe!(HasEvaluateWithGradient, NoEvaluateWithGradient, probe_evaluate_with_gradient,
        EvaluateWithGradient, EvaluateWithGradientFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>, g: &mut Coordinates<T::Elem>| f.evaluate_with_gradient(x, g));
    probe!(HasNumFunctions, NoNumFunctions, probe_num_functions, NumFunctions, CountFn<T>,
        |f: &T| f.num_functions());
    probe!(HasSeparableEvaluate, NoSeparableEvaluate, probe_evaluate_batch, SeparableEvaluate,
        EvaluateBatchFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>, begin: usize, size: usize| f.evaluate_batch(x, begin, size));
    probe!(HasSeparableGradient, NoSeparableGradient, probe_gradient_batch, SeparableGradient,
        GradientBatchFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>, begin: usize, g: &mut Coordinates<T::Elem>, size: usize| {
            f.gradient_batch(x, begin, g, size)
        });
    probe!(HasSeparableEvaluateWithGradient, NoSeparableEvaluateWithGradient,
        probe_evaluate_with_gradient_batch, SeparableEvaluateWithGradient,
        EvaluateWithGradientBatchFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>, begin: usize, g: &mut Coordinates<T::Elem>, size: usize| {
            f.evaluate_with_gradient_batch(x, begin, g, size)
        });
    probe!(HasPartialGradient, NoPartialGradient, probe_partial_gradient, PartialGradient,
        PartialGradientFn<T>,
        |f: &mut T, x: &Coordinates<T::Elem>, j: usize, g: &mut SparseGradient<T::Elem>| {
            f.partial_gradient(x, j, g)
        });
    probe!(HasNumFeatures, NoNumFeatures, probe_num_features, NumFeatures, CountFn<T>,
        |f: &T| f.num_features());
    probe!(HasConstraints, NoConstraints, probe_constraints, Constraints, ConstraintFns<T>,
        ConstraintFns {
            count: |f: &T| f.num_constraints(),
            evaluate: |f: &mut T, i: usize, x: &Coordinates<T::Elem>| f.evaluate_constraint(i, x),
            gradient: |f: &mut T, i: usize, x: &Coordinates<T::Elem>, g: &mut Coordinates<T::Elem>| {
                f.gradient_constraint(i, x, g)
            },
        });
    probe!(HasCategoricalInfo, NoCategoricalInfo, probe_categories, CategoricalInfo,
        CategoriesFn<T>, |f: &T| f.categories());
    probe!(HasInitialPoint, NoInitialPoint, probe_initial_point, InitialPoint,
        InitialPointFn<T>, |f: &T| f.initial_point());
}

#[doc(hidden)]
#[macro_export]
macro_rules! __method_table {
    ($value:expr) => {{
        #[allow(unused_imports)]
        use $crate::function::detect::probes::*;
        let probe = $crate::function::detect::Probe::of($value);
        $crate::function::detect::MethodTable {
            evaluate: (&probe).probe_evaluate(),
            gradient: (&probe).probe_gradient(),
            evaluate_with_gradient: (&probe).probe_evaluate_with_gradient(),
            num_functions: (&probe).probe_num_functions(),
            evaluate_batch: (&probe).probe_evaluate_batch(),
            gradient_batch: (&probe).probe_gradient_batch(),
            evaluate_with_gradient_batch: (&probe).probe_evaluate_with_gradient_batch(),
            partial_gradient: (&probe).probe_partial_gradient(),
            num_features: (&probe).probe_num_features(),
            constraints: (&probe).probe_constraints(),
            categories: (&probe).probe_categories(),
            initial_point: (&probe).probe_initial_point(),
        }
    }};
}

/// Detects which capability traits the (concrete) type of `$value` implements.
///
/// Takes a reference and returns a [`CapabilitySet`]. No method of the
/// value is called.
///
/// ```
/// use optkit::numerics::Coordinates;
/// use optkit::function::{Evaluate, Objective};
///
/// struct Parabola;
/// impl Objective for Parabola {
///     type Elem = f64;
/// }
/// impl Evaluate for Parabola {
///     fn evaluate(&mut self, x: &Coordinates<f64>) -> f64 {
///         x.dot(x)
///     }
/// }
///
/// let caps = optkit::detect_capabilities!(&Parabola);
/// assert!(caps.has_evaluate);
/// assert!(!caps.has_gradient);
/// ```
#[macro_export]
macro_rules! detect_capabilities {
    ($value:expr) => {
        $crate::__method_table!($value).capabilities()
    };
}

/// Wraps a user objective (by value) into a
/// [`FullFunction`](crate::function::FullFunction) offering every method
/// that can be inferred from the ones it implements.
#[macro_export]
macro_rules! full_function {
    ($value:expr) => {{
        let inner = $value;
        let table = $crate::__method_table!(&inner);
        $crate::function::FullFunction::from_table(inner, table)
    }};
}
