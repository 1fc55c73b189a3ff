use std::marker::PhantomData;

use crate::function::{Constraints, Evaluate, Gradient, InitialPoint, Objective};
use crate::numerics::{Coordinates, Real};

/// `min (x1 - 2)^2 + (x2 - 1)^2` subject to `x1 + x2 - 1 = 0`.
///
/// The Lagrange conditions give `x1 - 2 = x2 - 1`, so the solution is
/// `(1, 0)` with objective 2.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConstrainedQuadratic<E> {
    _elem: PhantomData<E>,
}

impl<E: Real> ConstrainedQuadratic<E> {
    pub fn new() -> Self {
        Self { _elem: PhantomData }
    }
}

impl<E: Real> Objective for ConstrainedQuadratic<E> {
    type Elem = E;
}

impl<E: Real> Evaluate for ConstrainedQuadratic<E> {
    fn evaluate(&mut self, x: &Coordinates<E>) -> E {
        let a = x[0] - E::lit(2.0);
        let b = x[1] - E::one();
        a * a + b * b
    }
}

impl<E: Real> Gradient for ConstrainedQuadratic<E> {
    fn gradient(&mut self, x: &Coordinates<E>, g: &mut Coordinates<E>) {
        g[0] = E::lit(2.0) * (x[0] - E::lit(2.0));
        g[1] = E::lit(2.0) * (x[1] - E::one());
    }
}

impl<E: Real> Constraints for ConstrainedQuadratic<E> {
    fn num_constraints(&self) -> usize {
        1
    }

    fn evaluate_constraint(&mut self, _index: usize, x: &Coordinates<E>) -> E {
        x[0] + x[1] - E::one()
    }

    fn gradient_constraint(&mut self, _index: usize, _x: &Coordinates<E>, g: &mut Coordinates<E>) {
        g.fill(E::one());
    }
}

impl<E: Real> InitialPoint for ConstrainedQuadratic<E> {
    fn initial_point(&self) -> Coordinates<E> {
        Coordinates::zeros(2, 1)
    }
}
