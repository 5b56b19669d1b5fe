use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use udr_core::relations::{RelationKind, Variant};
use udr_core::LogBase;

#[derive(Debug, Parser)]
#[command(name = "udr", version, about = "Uncertainty-disturbance relations: checks, searches and volume experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// RNG seed; every sampled quantity is a pure function of it.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Logarithm base for every entropic quantity.
    #[arg(long = "log-base", global = true, default_value = "2")]
    pub log_base: LogBase,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a relation and its dual on a given or sampled instance.
    Verify {
        #[command(flatten)]
        relation: RelationArgs,
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Data-processing margins of every divergence over a random ensemble.
    Dpi {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Order used for the Rényi and Tsallis divergences.
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
    },
    /// Search random instances for a violation.
    Search {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
    },
    /// Monte-Carlo volume of the data region a relation admits.
    Volume {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Volumes of the seven comparison relations, plus the printed U_ts form.
    Table2 {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        /// Emit reference values and gaps alongside the estimates.
        #[arg(long)]
        report: bool,
    },
    /// Admissibility grid over (p0, q0) at fixed c00.
    Region {
        #[command(flatten)]
        relation: RelationArgs,
        #[arg(long)]
        c00: f64,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
    },
    /// Coherence bounds H(p) >= C_r >= KL(q||q') from a state, or estimated from shots.
    Coherence {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Estimate the bounds from this many simulated shots per experiment.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        smoothing: f64,
    },
    /// Raw measurement counts: B alone, or A then B when --basis-a is given.
    Shots {
        #[arg(long)]
        state: PathBuf,
        #[arg(long = "basis-a")]
        basis_a: Option<PathBuf>,
        #[arg(long = "basis-b")]
        basis_b: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
    },
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    /// U_tr, U_tr_prime, U_rd, U_if, U_ts, U_re, U_hs, THM1_UNIVERSAL, EUR_TS or EUR_MU.
    #[arg(long)]
    pub relation: RelationKind,
    #[arg(long, default_value = "canonical")]
    pub variant: Variant,
    /// Order parameter; defaults to 0.5 (1 for EUR_MU).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Second EUR_MU order; defaults to the conjugate of alpha.
    #[arg(long)]
    pub beta: Option<f64>,
}

/// A state and two bases, read from JSON files or sampled.
#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Dimension of a sampled instance; checked against files when given.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub state: Option<PathBuf>,
    /// Defaults to the computational basis.
    #[arg(long = "basis-a")]
    pub basis_a: Option<PathBuf>,
    /// Defaults to the Fourier basis.
    #[arg(long = "basis-b")]
    pub basis_b: Option<PathBuf>,
}
