use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use optkit::optimizers::UpdatePolicy;

use crate::BenchError;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "optkit-bench", version, about = "Reproduce optkit experiments at desk scale")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulated annealing on Rosenbrock with 100000 evaluations.
    RosenbrockSa(CommonArgs),
    /// L-BFGS on linear regression, combined vs separate objective and gradient.
    LinregLbfgs(CommonArgs),
    /// Learning curves of six SGD variants on linear regression.
    Curves(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Number of regression samples.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Number of regression features.
    #[arg(long, default_value_t = 100)]
    pub d: usize,
    /// Standard deviation of the response noise.
    #[arg(long, default_value_t = 1.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 5)]
    pub epochs: usize,
    /// Iteration budget; defaults to 100000 for annealing and 10 for L-BFGS.
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Overrides each optimizer's default step size.
    #[arg(long)]
    pub step_size: Option<f64>,
    #[arg(long, default_value_t = 32)]
    pub batch_size: usize,
    /// Optimizers for `curves`, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = CurveOptimizer::DEFAULT_SET.to_vec())]
    pub optimizers: Vec<CurveOptimizer>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

impl Format {
    pub fn delimiter(self) -> u8 {
        match self {
            Format::Csv => b',',
            Format::Tsv => b'\t',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveOptimizer {
    Vanilla,
    Adam,
    Adagrad,
    Smorms3,
    Momentum,
    Rmsprop,
    Adadelta,
    Adamax,
    Nesterov,
}

impl CurveOptimizer {
    /// The six curves drawn by default; momentum stands in for SPALeRA.
    pub const DEFAULT_SET: [CurveOptimizer; 6] = [
        CurveOptimizer::Vanilla,
        CurveOptimizer::Adam,
        CurveOptimizer::Adagrad,
        CurveOptimizer::Smorms3,
        CurveOptimizer::Momentum,
        CurveOptimizer::Rmsprop,
    ];

    pub fn policy(self) -> UpdatePolicy {
        match self {
            CurveOptimizer::Vanilla => UpdatePolicy::Vanilla,
            CurveOptimizer::Adam => UpdatePolicy::adam(),
            CurveOptimizer::Adagrad => UpdatePolicy::adagrad(),
            CurveOptimizer::Smorms3 => UpdatePolicy::smorms3(),
            CurveOptimizer::Momentum => UpdatePolicy::momentum(),
            CurveOptimizer::Rmsprop => UpdatePolicy::rmsprop(),
            CurveOptimizer::Adadelta => UpdatePolicy::adadelta(),
            CurveOptimizer::Adamax => UpdatePolicy::adamax(),
            CurveOptimizer::Nesterov => UpdatePolicy::nesterov(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CurveOptimizer::Vanilla => "vanilla",
            CurveOptimizer::Adam => "adam",
            CurveOptimizer::Adagrad => "adagrad",
            CurveOptimizer::Smorms3 => "smorms3",
            CurveOptimizer::Momentum => "momentum",
            CurveOptimizer::Rmsprop => "rmsprop",
            CurveOptimizer::Adadelta => "adadelta",
            CurveOptimizer::Adamax => "adamax",
            CurveOptimizer::Nesterov => "nesterov",
        }
    }
}

impl std::fmt::Display for CurveOptimizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    RosenbrockSa,
    LinregLbfgs,
    Curves,
}

/// Validated settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub samples: usize,
    pub dimension: usize,
    pub noise: f64,
    pub epochs: usize,
    pub iterations: Option<usize>,
    pub step_size: Option<f64>,
    pub batch_size: usize,
    pub tolerance: f64,
    pub optimizers: Vec<CurveOptimizer>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl BenchConfig {
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            seed: DEFAULT_SEED,
            samples: 1000,
            dimension: 100,
            noise: 1.0,
            epochs: 5,
            iterations: None,
            step_size: None,
            batch_size: 32,
            tolerance: 0.0,
            optimizers: CurveOptimizer::DEFAULT_SET.to_vec(),
            output: None,
            format: Format::Csv,
        }
    }

    /// Parses command-line arguments (without the program name handling
    /// of exit codes, which is left to the caller).
    pub fn parse_from<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args)?;
        Self::try_from(cli).map_err(|e| Cli::command_error(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: String| Err(BenchError::Config(msg));
        if self.samples == 0 || self.dimension == 0 {
            return bad(format!("data size must be positive, got n={} d={}", self.samples, self.dimension));
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) {
            return bad(format!("noise must be finite and non-negative, got {}", self.noise));
        }
        if self.epochs == 0 {
            return bad("epochs must be at least 1".into());
        }
        if self.batch_size == 0 {
            return bad("batch size must be at least 1".into());
        }
        if self.iterations == Some(0) {
            return bad("iterations must be at least 1".into());
        }
        if let Some(step) = self.step_size {
            if !(step.is_finite() && step > 0.0) {
                return bad(format!("step size must be positive, got {step}"));
            }
        }
        if self.optimizers.is_empty() {
            return bad("at least one optimizer is required".into());
        }
        Ok(())
    }
}

impl Cli {
    fn command_error(message: String) -> clap::Error {
        use clap::CommandFactory;
        Cli::command().error(clap::error::ErrorKind::ValueValidation, message)
    }
}

impl TryFrom<Cli> for BenchConfig {
    type Error = BenchError;

    fn try_from(cli: Cli) -> Result<Self, BenchError> {
        let (experiment, args) = match cli.command {
            Command::RosenbrockSa(a) => (Experiment::RosenbrockSa, a),
            Command::LinregLbfgs(a) => (Experiment::LinregLbfgs, a),
            Command::Curves(a) => (Experiment::Curves, a),
        };
        let config = BenchConfig {
            experiment,
            seed: args.seed,
            samples: args.n,
            dimension: args.d,
            noise: args.noise,
            epochs: args.epochs,
            iterations: args.iterations,
            step_size: args.step_size,
            batch_size: args.batch_size,
            tolerance: 0.0,
            optimizers: args.optimizers,
            output: args.output,
            format: args.format,
        };
        config.validate()?;
        Ok(config)
    }
}
