use std::path::PathBuf;

use altfid_core::{FidelityKind, QuadratureConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "altfid", version, about = "Alternative fidelity and speed-limit numerics")]
pub struct Cli {
    /// Seed for every randomized search.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity between two state files.
    Fidelity(FidelityArgs),
    /// Speed-limit bound for a Werner-type qubit in the damped-atom model.
    Bound(BoundArgs),
    /// Bound over a (gamma0, r) grid read from a JSON config; emits CSV.
    Sweep(SweepArgs),
    /// Randomized and fixed property checks; emits a JSON report.
    Verify(VerifyArgs),
    /// Tabulates G(t) and the decay rate; emits CSV.
    Gmodel(GmodelArgs),
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    #[arg(long, default_value = "newf")]
    pub kind: FidelityKind,
    pub rho: PathBuf,
    pub sigma: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Newf,
    MtPure,
    Generic,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct QuadratureArgs {
    #[arg(long)]
    pub n_points: Option<usize>,
    #[arg(long)]
    pub refinement: Option<usize>,
    #[arg(long)]
    pub purity_guard: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

impl QuadratureArgs {
    pub fn apply(&self, mut cfg: QuadratureConfig) -> QuadratureConfig {
        if let Some(n) = self.n_points {
            cfg.n_points = n;
        }
        if let Some(k) = self.refinement {
            cfg.refinement = k;
        }
        if let Some(g) = self.purity_guard {
            cfg.purity_guard = g;
        }
        if let Some(t) = self.tolerance {
            cfg.tolerance = t;
        }
        cfg
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    /// Werner weight in [0, 1].
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    #[arg(long, value_enum, default_value_t = Method::Newf)]
    pub method: Method,
    /// Fidelity used by `--method generic`.
    #[arg(long, default_value = "f1")]
    pub kind: FidelityKind,
    /// Replace the dynamics by rho(t) = rho(0).
    #[arg(long)]
    pub frozen: bool,
    #[command(flatten)]
    pub quadrature: QuadratureArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub config: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Jozsa,
    Supermultiplicative,
    Monotonicity,
    MonotonicityFixed,
    Concavity,
    DerivativeChain,
    Orthogonality,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub property: Property,
    #[arg(long, default_value = "newf")]
    pub kind: FidelityKind,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    pub dims: Vec<usize>,
    /// Werner weight for `derivative-chain`.
    #[arg(long, default_value_t = 0.5)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    /// Sample times for `derivative-chain`.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct GmodelArgs {
    #[arg(long)]
    pub gamma0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Default: 10 / lambda.
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Add columns from the direct Volterra solution.
    #[arg(long)]
    pub oracle: bool,
}
