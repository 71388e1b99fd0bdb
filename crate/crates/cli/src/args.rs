use clap::{Parser, Subcommand, ValueEnum};
use renyi_core::Order;

#[derive(Debug, Parser)]
#[command(name = "renyi", version, about = "Rényi divergence toolkit with JSON input and output")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Order of the divergence: a decimal, `inf` or `-inf`.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_order)]
    pub alpha: Option<Order>,

    #[arg(long, global = true, value_enum, default_value_t = Base::Nats)]
    pub base: Base,

    /// Solver tolerance; each command has its own default.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Input document, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    pub input: String,

    /// Output destination, or `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    pub output: String,

    /// `csv` is available for `curve` only; `curve` defaults to it.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// D_α(P‖Q) for two discrete distributions.
    Div,
    /// D_α(P‖Q) along a grid of orders.
    Curve,
    /// Rényi entropy of a discrete distribution.
    Entropy,
    /// D_α between two univariate normals.
    Gaussian,
    /// D_α between finite products, summed over coordinates.
    Product,
    /// Equivalence or singularity of infinite Gaussian products.
    Dichotomy,
    /// (α,λ)-mixture of generators.
    Mixture,
    /// α-projection of Q onto the mixture family of the generators.
    Project,
    /// Tilted distribution P_α ∝ Q^(1-α) P^α.
    Tilt,
    /// Chernoff information.
    Chernoff,
    /// Pinsker-type lower bound (α/2)V².
    Pinsker,
    /// Minimax redundancy and capacity of a channel.
    Capacity,
    /// Shtarkov (normalized maximum likelihood) distribution.
    Shtarkov,
    /// Capacity-achieving input at infinite order from maximum likelihood.
    Mlinput,
    /// sup_θ D_α(P_θ‖Q) - R_α - D_α(Qopt‖Q) for a candidate Q.
    Probe,
    /// D_α between densities through level partitions.
    Discretize,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Div => "div",
            Command::Curve => "curve",
            Command::Entropy => "entropy",
            Command::Gaussian => "gaussian",
            Command::Product => "product",
            Command::Dichotomy => "dichotomy",
            Command::Mixture => "mixture",
            Command::Project => "project",
            Command::Tilt => "tilt",
            Command::Chernoff => "chernoff",
            Command::Pinsker => "pinsker",
            Command::Capacity => "capacity",
            Command::Shtarkov => "shtarkov",
            Command::Mlinput => "mlinput",
            Command::Probe => "probe",
            Command::Discretize => "discretize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Base {
    Nats,
    Bits,
}

impl Base {
    pub fn label(self) -> &'static str {
        match self {
            Base::Nats => "nats",
            Base::Bits => "bits",
        }
    }

    /// Converts a quantity in nats; one bit is `ln 2` nats.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            Base::Nats => nats,
            Base::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_order(s: &str) -> Result<Order, String> {
    s.parse::<Order>().map_err(|e| e.to_string())
}
