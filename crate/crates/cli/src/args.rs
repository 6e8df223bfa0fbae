use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "qhdl", version, about = "Compile and simulate QHDL photonic circuits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate QHDL files.
    Parse {
        files: Vec<PathBuf>,
        /// Print the design tree of every file as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the simplified circuit expression of an entity.
    Synth {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate an entity into a compiled-model JSON file.
    Compile {
        #[command(flatten)]
        target: Target,
        /// Generic value `name=value`; complex values as `re,im`.
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        /// Fock dimension `label=N`, or `*=N` for every mode.
        #[arg(long = "fock", value_name = "LABEL=N")]
        fock: Vec<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Simulate a compiled model.
    Sim(SimArgs),
    /// Reduce simulated traces to a Markov-chain SLH model.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct Target {
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub entity: String,
    #[arg(long)]
    pub arch: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Master,
    Mcwf,
}

#[derive(Debug, Args)]
pub struct SimArgs {
    pub model: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Master)]
    pub method: MethodArg,
    /// JSON input schedule; without one all inputs are vacuum.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Duration when no schedule is given.
    #[arg(long)]
    pub t_final: Option<f64>,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Sampling interval of the traces.
    #[arg(long, default_value_t = 0.01)]
    pub sample: f64,
    #[arg(long, default_value_t = 1)]
    pub traj: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Observable `n:LABEL` (photon number) or `a:LABEL` (amplitude);
    /// defaults to the photon number of every mode.
    #[arg(long = "obs", value_name = "KIND:LABEL")]
    pub obs: Vec<String>,
    /// Initial Fock occupation `label=n`; other modes start in vacuum.
    #[arg(long = "init", value_name = "LABEL=N")]
    pub init: Vec<String>,
    /// Also write one trace file per trajectory.
    #[arg(long)]
    pub per_trajectory: bool,
    /// Output directory.
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Directory written by `qhdl sim`.
    pub traces: PathBuf,
    /// Observable whose expectation is counted positively in D.
    #[arg(long)]
    pub plus: Option<String>,
    /// Observable subtracted in D.
    #[arg(long)]
    pub minus: Option<String>,
    /// Bin width for D; by default the observed range is split into 37 bins.
    #[arg(long)]
    pub bin_width: Option<f64>,
    #[arg(long)]
    pub bin_origin: Option<f64>,
    /// Sampling interval; read from the traces by default.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Drive amplitude; estimated from SET/RESET rates by default.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long, default_value = "HOLD")]
    pub hold: String,
    #[arg(long, default_value = "SET")]
    pub set: String,
    #[arg(long, default_value = "RESET")]
    pub reset: String,
    /// Transition counts CSV.
    #[arg(long)]
    pub counts: Option<PathBuf>,
    #[arg(long, short)]
    pub out: PathBuf,
}
