use std::marker::PhantomData;

use crate::function::{Evaluate, Gradient, InitialPoint, Objective};
use crate::numerics::{Coordinates, Real};

/// `f(x) = 1/2 sum (x_j^4 - 16 x_j^2 + 5 x_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StyblinskiTang<E> {
    dimension: usize,
    _elem: PhantomData<E>,
}

impl<E: Real> StyblinskiTang<E> {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            _elem: PhantomData,
        }
    }

    /// Per-coordinate global minimizer, the most negative root of
    /// `4t^3 - 32t + 5`, found by Newton's method.
    pub fn coordinate_minimizer() -> f64 {
        let mut t = -3.0f64;
        for _ in 0..50 {
            t -= (4.0 * t * t * t - 32.0 * t + 5.0) / (12.0 * t * t - 32.0);
        }
        t
    }
}

impl<E: Real> Objective for StyblinskiTang<E> {
    type Elem = E;
}

impl<E: Real> Evaluate for StyblinskiTang<E> {
    fn evaluate(&mut self, x: &Coordinates<E>) -> E {
        let sum = x.iter().fold(E::zero(), |acc, &v| {
            let v2 = v * v;
            acc + v2 * v2 - E::lit(16.0) * v2 + E::lit(5.0) * v
        });
        E::lit(0.5) * sum
    }
}

impl<E: Real> Gradient for StyblinskiTang<E> {
    fn gradient(&mut self, x: &Coordinates<E>, g: &mut Coordinates<E>) {
        for (gi, &v) in g.as_mut_slice().iter_mut().zip(x.iter()) {
            *gi = E::lit(0.5) * (E::lit(4.0) * v * v * v - E::lit(32.0) * v + E::lit(5.0));
        }
    }
}

impl<E: Real> InitialPoint for StyblinskiTang<E> {
    fn initial_point(&self) -> Coordinates<E> {
        Coordinates::zeros(self.dimension, 1)
    }
}
