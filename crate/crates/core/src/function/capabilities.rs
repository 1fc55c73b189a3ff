use std::fmt;

use thiserror::Error;

/// One user-suppliable method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Evaluate,
    Gradient,
    EvaluateWithGradient,
    SeparableEvaluate,
    SeparableGradient,
    SeparableEvaluateWithGradient,
    NumFunctions,
    PartialGradient,
    NumFeatures,
    Constraints,
    CategoricalInfo,
    InitialPoint,
}

impl Method {
    pub const ALL: [Method; 12] = [
        Method::Evaluate,
        Method::Gradient,
        Method::EvaluateWithGradient,
        Method::SeparableEvaluate,
        Method::SeparableGradient,
        Method::SeparableEvaluateWithGradient,
        Method::NumFunctions,
        Method::PartialGradient,
        Method::NumFeatures,
        Method::Constraints,
        Method::CategoricalInfo,
        Method::InitialPoint,
    ];

    /// Signature-style name used in diagnostics.
    pub fn signature(self) -> &'static str {
        match self {
            Method::Evaluate => "evaluate(x)",
            Method::Gradient => "gradient(x, g)",
            Method::EvaluateWithGradient => "evaluate_with_gradient(x, g)",
            Method::SeparableEvaluate => "evaluate_batch(x, begin, batch_size)",
            Method::SeparableGradient => "gradient_batch(x, begin, g, batch_size)",
            Method::SeparableEvaluateWithGradient => {
                "evaluate_with_gradient_batch(x, begin, g, batch_size)"
            }
            Method::NumFunctions => "num_functions()",
            Method::PartialGradient => "partial_gradient(x, j, g)",
            Method::NumFeatures => "num_features()",
            Method::Constraints => {
                "num_constraints() + evaluate_constraint(i, x) + gradient_constraint(i, x, g)"
            }
            Method::CategoricalInfo => "categories()",
            Method::InitialPoint => "initial_point()",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.signature())
    }
}

/// Which methods an objective offers.
///
/// Built by detection (what the user type implements) or by
/// [`CapabilitySet::inferred`] (what the framework can synthesize from that).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CapabilitySet {
    pub has_evaluate: bool,
    pub has_gradient: bool,
    pub has_evaluate_with_gradient: bool,
    pub has_separable_evaluate: bool,
    pub has_separable_gradient: bool,
    pub has_separable_evaluate_with_gradient: bool,
    pub has_num_functions: bool,
    pub has_partial_gradient: bool,
    pub has_num_features: bool,
    pub has_constraints: bool,
    pub has_categorical_info: bool,
    pub has_initial_point: bool,
}

impl CapabilitySet {
    pub fn from_methods(methods: &[Method]) -> Self {
        let mut set = Self::default();
        for &m in methods {
            *set.flag_mut(m) = true;
        }
        set
    }

    pub fn has(&self, method: Method) -> bool {
        match method {
            Method::Evaluate => self.has_evaluate,
            Method::Gradient => self.has_gradient,
            Method::EvaluateWithGradient => self.has_evaluate_with_gradient,
            Method::SeparableEvaluate => self.has_separable_evaluate,
            Method::SeparableGradient => self.has_separable_gradient,
            Method::SeparableEvaluateWithGradient => self.has_separable_evaluate_with_gradient,
            Method::NumFunctions => self.has_num_functions,
            Method::PartialGradient => self.has_partial_gradient,
            Method::NumFeatures => self.has_num_features,
            Method::Constraints => self.has_constraints,
            Method::CategoricalInfo => self.has_categorical_info,
            Method::InitialPoint => self.has_initial_point,
        }
    }

    fn flag_mut(&mut self, method: Method) -> &mut bool {
        match method {
            Method::Evaluate => &mut self.has_evaluate,
            Method::Gradient => &mut self.has_gradient,
            Method::EvaluateWithGradient => &mut self.has_evaluate_with_gradient,
            Method::SeparableEvaluate => &mut self.has_separable_evaluate,
            Method::SeparableGradient => &mut self.has_separable_gradient,
            Method::SeparableEvaluateWithGradient => &mut self.has_separable_evaluate_with_gradient,
            Method::NumFunctions => &mut self.has_num_functions,
            Method::PartialGradient => &mut self.has_partial_gradient,
            Method::NumFeatures => &mut self.has_num_features,
            Method::Constraints => &mut self.has_constraints,
            Method::CategoricalInfo => &mut self.has_categorical_info,
            Method::InitialPoint => &mut self.has_initial_point,
        }
    }

    pub fn methods(&self) -> Vec<Method> {
        Method::ALL.into_iter().filter(|&m| self.has(m)).collect()
    }

    /// Closure of `self` under method inference.
    ///
    /// * evaluate + gradient gives evaluate_with_gradient
    /// * evaluate_with_gradient gives evaluate and gradient
    /// * separable evaluate + num_functions gives evaluate
    /// * separable gradient + num_functions gives gradient
    /// * separable evaluate_with_gradient + num_functions gives evaluate and gradient
    ///
    /// Separable batch methods are also completed among themselves the same
    /// way the full methods are.
    pub fn inferred(&self) -> Self {
        let mut s = *self;
        if s.has_separable_evaluate && s.has_separable_gradient {
            s.has_separable_evaluate_with_gradient = true;
        }
        if s.has_separable_evaluate_with_gradient {
            s.has_separable_evaluate = true;
            s.has_separable_gradient = true;
        }
        if s.has_num_functions {
            s.has_evaluate |= s.has_separable_evaluate;
            s.has_gradient |= s.has_separable_gradient;
        }
        if s.has_evaluate_with_gradient {
            s.has_evaluate = true;
            s.has_gradient = true;
        }
        if s.has_evaluate && s.has_gradient {
            s.has_evaluate_with_gradient = true;
        }
        s
    }

    /// Every class this set admits, in declaration order.
    pub fn classes(&self) -> Vec<FunctionClass> {
        FunctionClass::ALL
            .into_iter()
            .filter(|&c| check_requirements(self, c).is_ok())
            .collect()
    }
}

impl fmt::Display for CapabilitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let methods = self.methods();
        if methods.is_empty() {
            return f.write_str("(none)");
        }
        let names: Vec<_> = methods.iter().map(|m| m.signature()).collect();
        f.write_str(&names.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionClass {
    Arbitrary,
    Differentiable,
    PartiallyDifferentiable,
    ArbitrarySeparable,
    DifferentiableSeparable,
    Categorical,
    Constrained,
}

impl FunctionClass {
    pub const ALL: [FunctionClass; 7] = [
        FunctionClass::Arbitrary,
        FunctionClass::Differentiable,
        FunctionClass::PartiallyDifferentiable,
        FunctionClass::ArbitrarySeparable,
        FunctionClass::DifferentiableSeparable,
        FunctionClass::Categorical,
        FunctionClass::Constrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionClass::Arbitrary => "arbitrary",
            FunctionClass::Differentiable => "differentiable",
            FunctionClass::PartiallyDifferentiable => "partially differentiable",
            FunctionClass::ArbitrarySeparable => "arbitrary separable",
            FunctionClass::DifferentiableSeparable => "differentiable separable",
            FunctionClass::Categorical => "categorical",
            FunctionClass::Constrained => "constrained",
        }
    }

    /// Requirement in disjunctive normal form: the class is admitted when every
    /// method of at least one alternative is available.
    pub fn alternatives(self) -> Vec<Vec<Method>> {
        use Method::*;
        match self {
            FunctionClass::Arbitrary => vec![vec![Evaluate]],
            FunctionClass::Differentiable => {
                vec![vec![Evaluate, Gradient], vec![EvaluateWithGradient]]
            }
            FunctionClass::PartiallyDifferentiable => {
                vec![vec![Evaluate, PartialGradient, NumFeatures]]
            }
            FunctionClass::ArbitrarySeparable => vec![
                vec![SeparableEvaluate, NumFunctions],
                vec![SeparableEvaluateWithGradient, NumFunctions],
            ],
            FunctionClass::DifferentiableSeparable => vec![
                vec![SeparableEvaluate, SeparableGradient, NumFunctions],
                vec![SeparableEvaluateWithGradient, NumFunctions],
            ],
            FunctionClass::Categorical => vec![vec![Evaluate, CategoricalInfo]],
            FunctionClass::Constrained => vec![
                vec![Evaluate, Gradient, Constraints],
                vec![EvaluateWithGradient, Constraints],
            ],
        }
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A function does not offer the methods a function class requires.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.diagnostic())]
pub struct RequirementError {
    pub required: FunctionClass,
    /// Per alternative, the methods that would have to be added.
    pub missing: Vec<Vec<Method>>,
    pub supplied: CapabilitySet,
}

impl RequirementError {
    pub fn diagnostic(&self) -> String {
        let options: Vec<String> = self
            .missing
            .iter()
            .map(|alt| {
                alt.iter()
                    .map(|m| m.signature())
                    .collect::<Vec<_>>()
                    .join(" and ")
            })
            .collect();
        format!(
            "the objective function is not usable as a {class} function: it needs {options}. \
             Methods supplied: {supplied}. Implement the missing capability traits for the \
             objective type so that it satisfies the {class} function requirements.",
            class = self.required,
            options = options.join(", or "),
            supplied = self.supplied,
        )
    }

    /// Every method named in any alternative.
    pub fn missing_methods(&self) -> Vec<Method> {
        let mut out = Vec::new();
        for m in self.missing.iter().flatten() {
            if !out.contains(m) {
                out.push(*m);
            }
        }
        out
    }
}

/// Checks whether `capabilities` (as supplied by the user) admits `class`
/// once method inference has been applied.
pub fn check_requirements(
    capabilities: &CapabilitySet,
    class: FunctionClass,
) -> Result<(), RequirementError> {
    let available = capabilities.inferred();
    let alternatives = class.alternatives();
    if alternatives
        .iter()
        .any(|alt| alt.iter().all(|&m| available.has(m)))
    {
        return Ok(());
    }
    let missing = alternatives
        .into_iter()
        .map(|alt| alt.into_iter().filter(|&m| !available.has(m)).collect())
        .collect();
    Err(RequirementError {
        required: class,
        missing,
        supplied: *capabilities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Method::*;

    #[test]
    fn evaluate_only_is_not_differentiable() {
        let caps = CapabilitySet::from_methods(&[Evaluate]);
        let err = check_requirements(&caps, FunctionClass::Differentiable).unwrap_err();
        assert_eq!(err.missing, vec![vec![Gradient], vec![EvaluateWithGradient]]);
        let text = err.to_string();
        assert!(text.contains("differentiable"));
        assert!(text.contains("gradient(x, g)"));
        assert!(text.contains("evaluate_with_gradient(x, g)"));
        assert!(text.contains("Methods supplied: evaluate(x)"));
    }

    #[test]
    fn combined_only_is_differentiable() {
        let caps = CapabilitySet::from_methods(&[EvaluateWithGradient]);
        assert!(check_requirements(&caps, FunctionClass::Differentiable).is_ok());
        assert!(check_requirements(&caps, FunctionClass::Arbitrary).is_ok());
    }

    #[test]
    fn separable_parts_are_differentiable_separable() {
        let caps = CapabilitySet::from_methods(&[SeparableEvaluate, SeparableGradient, NumFunctions]);
        assert!(check_requirements(&caps, FunctionClass::DifferentiableSeparable).is_ok());
        assert!(check_requirements(&caps, FunctionClass::Differentiable).is_ok());
    }

    #[test]
    fn separable_without_count_does_not_aggregate() {
        let caps = CapabilitySet::from_methods(&[SeparableEvaluate]);
        assert!(!caps.inferred().has_evaluate);
        let err = check_requirements(&caps, FunctionClass::ArbitrarySeparable).unwrap_err();
        assert!(err.missing_methods().contains(&NumFunctions));
    }

    #[test]
    fn inference_closure_rules() {
        let c = CapabilitySet::from_methods(&[Evaluate, Gradient]).inferred();
        assert!(c.has_evaluate_with_gradient);
        let c = CapabilitySet::from_methods(&[EvaluateWithGradient]).inferred();
        assert!(c.has_evaluate && c.has_gradient);
        let c = CapabilitySet::from_methods(&[SeparableEvaluate, NumFunctions]).inferred();
        assert!(c.has_evaluate && !c.has_gradient);
        let c = CapabilitySet::from_methods(&[SeparableGradient, NumFunctions]).inferred();
        assert!(c.has_gradient && !c.has_evaluate);
        let c = CapabilitySet::from_methods(&[SeparableEvaluateWithGradient, NumFunctions]).inferred();
        assert!(c.has_evaluate && c.has_gradient && c.has_evaluate_with_gradient);
    }

    #[test]
    fn empty_set_admits_nothing() {
        assert!(CapabilitySet::default().classes().is_empty());
        assert_eq!(CapabilitySet::default().to_string(), "(none)");
    }

    #[test]
    fn constrained_and_categorical() {
        let caps = CapabilitySet::from_methods(&[Evaluate, Gradient, Constraints]);
        assert!(caps.classes().contains(&FunctionClass::Constrained));
        let caps = CapabilitySet::from_methods(&[Evaluate, Constraints]);
        assert!(!caps.classes().contains(&FunctionClass::Constrained));
        let caps = CapabilitySet::from_methods(&[Evaluate, CategoricalInfo]);
        assert_eq!(caps.classes(), vec![FunctionClass::Arbitrary, FunctionClass::Categorical]);
    }

    #[test]
    fn partially_differentiable() {
        let caps = CapabilitySet::from_methods(&[Evaluate, PartialGradient, NumFeatures]);
        assert!(caps.classes().contains(&FunctionClass::PartiallyDifferentiable));
        let err = check_requirements(
            &CapabilitySet::from_methods(&[Evaluate, PartialGradient]),
            FunctionClass::PartiallyDifferentiable,
        )
        .unwrap_err();
        assert_eq!(err.missing, vec![vec![NumFeatures]]);
    }
}
