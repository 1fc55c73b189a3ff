//! Test and benchmark objectives with analytic gradients.

mod constrained;
mod regression;
mod rosenbrock;
mod sphere;
mod styblinski_tang;

pub use constrained::ConstrainedQuadratic;
pub use regression::{synthetic_regression, CombinedRegression, LinearRegression, RegressionData, SeparateRegression};
pub use rosenbrock::Rosenbrock;
pub use sphere::Sphere;
pub use styblinski_tang::StyblinskiTang;

use crate::function::{CapabilitySet, Evaluate, InitialPoint};
use crate::numerics::Coordinates;

/// Summary of a named problem with its known solution, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemDescriptor {
    pub name: &'static str,
    pub dimension: usize,
    pub initial_point: Coordinates<f64>,
    pub known_optimum: Option<Coordinates<f64>>,
    pub known_minimum_value: Option<f64>,
    pub capabilities: CapabilitySet,
}

impl ProblemDescriptor {
    fn of<P: Evaluate<Elem = f64> + InitialPoint>(
        name: &'static str,
        problem: &P,
        capabilities: CapabilitySet,
        optimum: Option<Vec<f64>>,
    ) -> Self {
        let initial_point = problem.initial_point();
        Self {
            name,
            dimension: initial_point.len(),
            initial_point,
            known_minimum_value: None,
            known_optimum: optimum.map(Coordinates::from_vec),
            capabilities,
        }
    }

    fn with_minimum(mut self, value: f64) -> Self {
        self.known_minimum_value = Some(value);
        self
    }
}

/// Descriptors of the fixed-size problems: Rosenbrock, a 2-D sphere, 2-D
/// Styblinski-Tang and the constrained quadratic.
pub fn descriptors() -> Vec<ProblemDescriptor> {
    let rosenbrock = Rosenbrock::<f64>::new();
    let sphere = Sphere::<f64>::new(2);
    let tang = StyblinskiTang::<f64>::new(2);
    let constrained = ConstrainedQuadratic::<f64>::new();
    let t = StyblinskiTang::<f64>::coordinate_minimizer();
    let tang_min = {
        let mut p = tang;
        p.evaluate(&Coordinates::from_vec(vec![t, t]))
    };
    vec![
        ProblemDescriptor::of(
            "rosenbrock",
            &rosenbrock,
            crate::detect_capabilities!(&rosenbrock),
            Some(vec![1.0, 1.0]),
        )
        .with_minimum(0.0),
        ProblemDescriptor::of("sphere", &sphere, crate::detect_capabilities!(&sphere), Some(vec![0.0, 0.0]))
            .with_minimum(0.0),
        ProblemDescriptor::of("styblinski_tang", &tang, crate::detect_capabilities!(&tang), Some(vec![t, t]))
            .with_minimum(tang_min),
        ProblemDescriptor::of(
            "constrained_quadratic",
            &constrained,
            crate::detect_capabilities!(&constrained),
            Some(vec![1.0, 0.0]),
        )
        .with_minimum(2.0),
    ]
}
