use std::marker::PhantomData;

use crate::function::{Evaluate, Gradient, InitialPoint, Objective};
use crate::numerics::{Coordinates, Real};

/// `f(x) = 100 (x2 - x1^2)^2 + (1 - x1)^2`, minimum 0 at `(1, 1)`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Rosenbrock<E> {
    _elem: PhantomData<E>,
}

impl<E: Real> Rosenbrock<E> {
    pub fn new() -> Self {
        Self { _elem: PhantomData }
    }

    /// The classical start `(-1.2, 1)`.
    pub fn initial() -> Coordinates<E> {
        Coordinates::from_vec(vec![E::lit(-1.2), E::one()])
    }
}

impl<E: Real> Objective for Rosenbrock<E> {
    type Elem = E;
}

impl<E: Real> Evaluate for Rosenbrock<E> {
    fn evaluate(&mut self, x: &Coordinates<E>) -> E {
        let (x1, x2) = (x[0], x[1]);
        let a = x2 - x1 * x1;
        let b = E::one() - x1;
        E::lit(100.0) * a * a + b * b
    }
}

impl<E: Real> Gradient for Rosenbrock<E> {
    fn gradient(&mut self, x: &Coordinates<E>, g: &mut Coordinates<E>) {
        let (x1, x2) = (x[0], x[1]);
        let a = x2 - x1 * x1;
        g[0] = E::lit(-400.0) * x1 * a - E::lit(2.0) * (E::one() - x1);
        g[1] = E::lit(200.0) * a;
    }
}

impl<E: Real> InitialPoint for Rosenbrock<E> {
    fn initial_point(&self) -> Coordinates<E> {
        Self::initial()
    }
}
