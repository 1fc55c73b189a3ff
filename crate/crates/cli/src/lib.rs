//! Desk-scale benchmark harness for `optkit`.
//!
//! Three experiments are available, each as a subcommand of the
//! `optkit-bench` binary and as a plain function here:
//!
//! - [`run_rosenbrock_sa`]: simulated annealing on Rosenbrock with a fixed
//!   budget of objective evaluations.
//! - [`run_linreg_lbfgs`]: L-BFGS on linear regression, once with a combined
//!   objective+gradient method and once with separate methods, counting
//!   residual computations.
//! - [`run_curves`]: six SGD variants on linear regression, one row per epoch.

mod config;
mod output;
mod runs;

use thiserror::Error;

pub use config::{BenchConfig, Cli, Command, CommonArgs, CurveOptimizer, Experiment, Format, DEFAULT_SEED};
pub use output::{write_table, Table};
pub use runs::{
    num, run, run_curves, run_linreg_lbfgs, run_rosenbrock_sa, AnnealingRun, CurveRow, Curves, RegressionComparison,
    RegressionVariant, Variant, SPALERA_NOTE,
};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Optimizer(#[from] optkit::Error),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot write output: {0}")]
    Csv(#[from] csv::Error),
}
