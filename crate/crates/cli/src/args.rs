use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nls_core::verify::SampleBox;

#[derive(Debug, Parser)]
#[command(name = "nls", version, about = "Closed-form NLS solutions: catalog, symmetries, residual and spectral checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the solution families.
    List {
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Print one family's parameters, conditions and formula as JSON.
    Describe { family: String },
    /// Evaluate a spec at one point.
    Eval {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y: f64,
    },
    /// Finite-difference residual check of a spec, or of a built-in suite.
    Verify {
        #[arg(long, required_unless_present = "suite", conflicts_with = "suite")]
        spec: Option<PathBuf>,
        /// Run the bundled certification matrix instead of one spec.
        #[arg(long, value_enum)]
        suite: Option<SuiteKind>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Apply the spec's transforms (plus `--ops`) and re-verify.
    Transform {
        #[arg(long)]
        spec: PathBuf,
        /// Extra ops as a JSON array, appended after the spec's own.
        #[arg(long)]
        ops: Option<String>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Spectral cross-validation ladder against the closed form.
    Propagate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pass threshold on the finest rung's relative L2 error.
        #[arg(long, default_value_t = 1e-5)]
        tol: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [128usize, 256, 512])]
        nx: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1e-3, 5e-4, 2.5e-4])]
        dt: Vec<f64>,
        /// Overrides the end time as `t0 + steps·max(dt)`.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, default_value_t = 0.1)]
        t1: f64,
        #[arg(long, default_value_t = 4)]
        periods: usize,
        #[arg(long, default_value_t = 8)]
        ny: usize,
    },
    /// Seed a grid from a spec, optionally evolve it, and write it out.
    Export {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = GridFormat::Csv)]
        format: GridFormat,
        #[arg(long, default_value_t = 256)]
        nx: usize,
        #[arg(long, default_value_t = 8)]
        ny: usize,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        #[arg(long, default_value_t = 0)]
        steps: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, default_value_t = 4)]
        periods: usize,
        /// 0 for the first field, 1 for the second.
        #[arg(long, default_value_t = 0)]
        component: usize,
    },
}

#[derive(Debug, Args)]
pub struct SamplingArgs {
    /// Report path; `.csv` writes report rows, anything else JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// `tmin:tmax:xmin:xmax:ymin:ymax`
    #[arg(long = "box", allow_hyphen_values = true)]
    pub bounds: Option<SampleBox>,
    #[arg(long)]
    pub exclusion: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Single,
    Coupled,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
pub enum SuiteKind {
    Single,
    Coupled,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
pub enum GridFormat {
    Csv,
    Bin,
}
