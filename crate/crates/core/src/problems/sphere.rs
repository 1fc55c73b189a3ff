use std::marker::PhantomData;

use crate::function::{
    Evaluate, Gradient, InitialPoint, NumFeatures, NumFunctions, Objective, PartialGradient, SeparableEvaluate,
    SeparableGradient,
};
use crate::numerics::{Coordinates, Real, Scalar, SparseGradient};

/// `f(x) = sum x_j^2`. Part `i` of the separable form is `x_i^2`.
///
/// Evaluation works for every element type, integers included; gradients
/// need floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere<E> {
    dimension: usize,
    _elem: PhantomData<E>,
}

impl<E: Scalar> Sphere<E> {
    pub fn new(dimension: usize) -> Self {
        Self {
            dimension,
            _elem: PhantomData,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }
}

impl<E: Scalar> Objective for Sphere<E> {
    type Elem = E;
}

impl<E: Scalar> Evaluate for Sphere<E> {
    fn evaluate(&mut self, x: &Coordinates<E>) -> E {
        x.iter().fold(E::zero(), |acc, &v| acc + v * v)
    }
}

impl<E: Real> Gradient for Sphere<E> {
    fn gradient(&mut self, x: &Coordinates<E>, g: &mut Coordinates<E>) {
        for (gi, &xi) in g.as_mut_slice().iter_mut().zip(x.iter()) {
            *gi = xi + xi;
        }
    }
}

impl<E: Scalar> NumFunctions for Sphere<E> {
    fn num_functions(&self) -> usize {
        self.dimension
    }
}

impl<E: Scalar> SeparableEvaluate for Sphere<E> {
    fn evaluate_batch(&mut self, x: &Coordinates<E>, begin: usize, batch_size: usize) -> E {
        x.as_slice()[begin..begin + batch_size]
            .iter()
            .fold(E::zero(), |acc, &v| acc + v * v)
    }
}

impl<E: Real> SeparableGradient for Sphere<E> {
    fn gradient_batch(&mut self, x: &Coordinates<E>, begin: usize, g: &mut Coordinates<E>, batch_size: usize) {
        g.fill(E::zero());
        for i in begin..begin + batch_size {
            g[i] = x[i] + x[i];
        }
    }
}

impl<E: Scalar> NumFeatures for Sphere<E> {
    fn num_features(&self) -> usize {
        self.dimension
    }
}

impl<E: Real> PartialGradient for Sphere<E> {
    fn partial_gradient(&mut self, x: &Coordinates<E>, j: usize, g: &mut SparseGradient<E>) {
        g.set(j, x[j] + x[j]);
    }
}

impl<E: Real> InitialPoint for Sphere<E> {
    fn initial_point(&self) -> Coordinates<E> {
        Coordinates::filled(self.dimension, 1, E::one())
    }
}
