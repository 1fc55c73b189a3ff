use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::function::{
    Evaluate, EvaluateWithGradient, Gradient, InitialPoint, NumFunctions, Objective, SeparableEvaluate,
    SeparableEvaluateWithGradient, SeparableGradient,
};
use crate::numerics::{Coordinates, Real};
use crate::Error;

/// Least squares `f(theta) = (X theta - y)^T (X theta - y)` with gradient
/// `2 X^T (X theta - y)`.
///
/// Part `i` of the separable form is `(x_i^T theta - y_i)^2`. Every method
/// that needs the residual `X theta - y` computes it once per call and bumps
/// [`residual_computations`](Self::residual_computations).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRegression<E> {
    features: Coordinates<E>,
    responses: Coordinates<E>,
    residual_computations: usize,
}

impl<E: Real> LinearRegression<E> {
    /// `features` is `n x d`, `responses` holds `n` values.
    pub fn new(features: Coordinates<E>, responses: Coordinates<E>) -> Result<Self, Error> {
        if features.rows() == 0 {
            return Err(Error::InvalidArgument("regression needs at least one sample".into()));
        }
        if responses.len() != features.rows() {
            return Err(Error::InvalidArgument(format!(
                "{} responses for {} samples",
                responses.len(),
                features.rows()
            )));
        }
        Ok(Self {
            features,
            responses,
            residual_computations: 0,
        })
    }

    pub fn samples(&self) -> usize {
        self.features.rows()
    }

    pub fn dimension(&self) -> usize {
        self.features.cols()
    }

    pub fn features(&self) -> &Coordinates<E> {
        &self.features
    }

    pub fn responses(&self) -> &Coordinates<E> {
        &self.responses
    }

    pub fn residual_computations(&self) -> usize {
        self.residual_computations
    }

    pub fn reset_residual_computations(&mut self) {
        self.residual_computations = 0;
    }

    fn check_theta(&self, theta: &Coordinates<E>) {
        assert_eq!(
            theta.len(),
            self.dimension(),
            "parameter vector has {} entries, model has {}",
            theta.len(),
            self.dimension()
        );
    }

    /// Residuals of rows `begin..begin + count`.
    fn residual(&mut self, theta: &Coordinates<E>, begin: usize, count: usize) -> Vec<E> {
        self.check_theta(theta);
        self.residual_computations += 1;
        (begin..begin + count)
            .map(|i| {
                let fit = self
                    .features
                    .row(i)
                    .iter()
                    .zip(theta.iter())
                    .fold(E::zero(), |acc, (&a, &t)| acc + a * t);
                fit - self.responses[i]
            })
            .collect()
    }

    fn sum_of_squares(residual: &[E]) -> E {
        residual.iter().fold(E::zero(), |acc, &r| acc + r * r)
    }

    fn gradient_from(&self, residual: &[E], begin: usize, g: &mut Coordinates<E>) {
        g.fill(E::zero());
        let two = E::lit(2.0);
        for (k, &r) in residual.iter().enumerate() {
            let w = two * r;
            for (gj, &a) in g.as_mut_slice().iter_mut().zip(self.features.row(begin + k)) {
                *gj = *gj + w * a;
            }
        }
    }
}

impl<E: Real> Objective for LinearRegression<E> {
    type Elem = E;
}

impl<E: Real> Evaluate for LinearRegression<E> {
    fn evaluate(&mut self, theta: &Coordinates<E>) -> E {
        let r = self.residual(theta, 0, self.samples());
        Self::sum_of_squares(&r)
    }
}

impl<E: Real> Gradient for LinearRegression<E> {
    fn gradient(&mut self, theta: &Coordinates<E>, g: &mut Coordinates<E>) {
        let r = self.residual(theta, 0, self.samples());
        self.gradient_from(&r, 0, g);
    }
}

impl<E: Real> EvaluateWithGradient for LinearRegression<E> {
    fn evaluate_with_gradient(&mut self, theta: &Coordinates<E>, g: &mut Coordinates<E>) -> E {
        let r = self.residual(theta, 0, self.samples());
        self.gradient_from(&r, 0, g);
        Self::sum_of_squares(&r)
    }
}

impl<E: Real> NumFunctions for LinearRegression<E> {
    fn num_functions(&self) -> usize {
        self.samples()
    }
}

impl<E: Real> SeparableEvaluate for LinearRegression<E> {
    fn evaluate_batch(&mut self, theta: &Coordinates<E>, begin: usize, batch_size: usize) -> E {
        let r = self.residual(theta, begin, batch_size);
        Self::sum_of_squares(&r)
    }
}

impl<E: Real> SeparableGradient for LinearRegression<E> {
    fn gradient_batch(&mut self, theta: &Coordinates<E>, begin: usize, g: &mut Coordinates<E>, batch_size: usize) {
        let r = self.residual(theta, begin, batch_size);
        self.gradient_from(&r, begin, g);
    }
}

impl<E: Real> SeparableEvaluateWithGradient for LinearRegression<E> {
    fn evaluate_with_gradient_batch(
        &mut self,
        theta: &Coordinates<E>,
        begin: usize,
        g: &mut Coordinates<E>,
        batch_size: usize,
    ) -> E {
        let r = self.residual(theta, begin, batch_size);
        self.gradient_from(&r, begin, g);
        Self::sum_of_squares(&r)
    }
}

impl<E: Real> InitialPoint for LinearRegression<E> {
    fn initial_point(&self) -> Coordinates<E> {
        Coordinates::zeros(self.dimension(), 1)
    }
}

/// Linear regression exposing only `evaluate` and `gradient`, so a combined
/// request computes the residual twice.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparateRegression<E>(pub LinearRegression<E>);

impl<E: Real> Objective for SeparateRegression<E> {
    type Elem = E;
}

impl<E: Real> Evaluate for SeparateRegression<E> {
    fn evaluate(&mut self, theta: &Coordinates<E>) -> E {
        self.0.evaluate(theta)
    }
}

impl<E: Real> Gradient for SeparateRegression<E> {
    fn gradient(&mut self, theta: &Coordinates<E>, g: &mut Coordinates<E>) {
        self.0.gradient(theta, g)
    }
}

/// Linear regression exposing only `evaluate_with_gradient`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedRegression<E>(pub LinearRegression<E>);

impl<E: Real> Objective for CombinedRegression<E> {
    type Elem = E;
}

impl<E: Real> EvaluateWithGradient for CombinedRegression<E> {
    fn evaluate_with_gradient(&mut self, theta: &Coordinates<E>, g: &mut Coordinates<E>) -> E {
        self.0.evaluate_with_gradient(theta, g)
    }
}

/// Seeded regression data: standard normal features, a unit-norm true
/// parameter vector, and responses `X theta + noise * N(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionData<E> {
    pub features: Coordinates<E>,
    pub responses: Coordinates<E>,
    pub true_parameters: Coordinates<E>,
}

impl<E: Real> RegressionData<E> {
    pub fn into_problem(self) -> LinearRegression<E> {
        LinearRegression::new(self.features, self.responses).expect("generated shapes agree")
    }
}

pub fn synthetic_regression<E: Real>(samples: usize, dimension: usize, noise: f64, seed: u64) -> RegressionData<E> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut theta: Vec<f64> = (0..dimension).map(|_| rng.sample(StandardNormal)).collect();
    let norm = theta.iter().map(|t| t * t).sum::<f64>().sqrt();
    if norm > 0.0 {
        theta.iter_mut().for_each(|t| *t /= norm);
    }
    let mut features = Vec::with_capacity(samples * dimension);
    let mut responses = Vec::with_capacity(samples);
    for _ in 0..samples {
        let row: Vec<f64> = (0..dimension).map(|_| rng.sample(StandardNormal)).collect();
        let fit: f64 = row.iter().zip(&theta).map(|(a, t)| a * t).sum();
        let eps: f64 = rng.sample(StandardNormal);
        responses.push(E::lit(fit + noise * eps));
        features.extend(row.into_iter().map(E::lit));
    }
    RegressionData {
        features: Coordinates::from_row_major(samples, dimension, features),
        responses: Coordinates::from_vec(responses),
        true_parameters: Coordinates::from_vec(theta.into_iter().map(E::lit).collect()),
    }
}
