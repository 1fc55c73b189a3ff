//! Shared fixtures for the criterion benches.

use optkit::problems::{synthetic_regression, LinearRegression};

/// Regression instance used by the timing comparisons: 1000 samples,
/// 100 features, unit noise.
pub fn regression(seed: u64) -> LinearRegression<f64> {
    synthetic_regression::<f64>(1000, 100, 1.0, seed).into_problem()
}
