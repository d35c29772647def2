use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "morsekg",
    version,
    about = "Bound states of the effective-mass Klein-Gordon equation with a generalized Morse potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Significant digits in CSV output.
    #[arg(long, global = true, default_value_t = 6)]
    pub digits: usize,

    /// Use p = +Q(V2 - m1c^2) in the series exponent and recurrence.
    #[arg(long, global = true)]
    pub paper_signs: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy levels for a molecule, raw parameters, or the complex potential.
    Levels(LevelsArgs),
    /// Constant-mass levels of H2, LiH and HCl against the published table.
    Table1,
    /// Level n against 1/M = m1/m0 on a logarithmic grid.
    Sweep(SweepArgs),
    /// Series wavefunction of one level sampled on x >= 0.
    Wavefn(WavefnArgs),
    /// Closed-form levels against the finite-difference eigensolver.
    Verify(VerifyArgs),
    /// Self-test of the finite-difference eigensolver.
    ValidateOracle(ValidateArgs),
}

/// Real Morse system: a registry molecule or raw parameters.
#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Registry molecule (case-insensitive).
    #[arg(long, conflicts_with_all = ["v1", "v2", "beta", "q_inv"])]
    pub molecule: Option<String>,

    /// V1 (energy units of the run).
    #[arg(long, allow_negative_numbers = true)]
    pub v1: Option<f64>,
    /// V2 (energy units of the run).
    #[arg(long, allow_negative_numbers = true)]
    pub v2: Option<f64>,
    /// Exponent scale beta.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// 1/Q (energy units of the run).
    #[arg(long, allow_negative_numbers = true)]
    pub q_inv: Option<f64>,

    /// m0c^2; taken from the molecule when one is given.
    #[arg(long, allow_negative_numbers = true)]
    pub m0: Option<f64>,
    /// m1c^2 (MeV for molecules).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "inv_m")]
    pub m1: Option<f64>,
    /// m1 as a fraction of m0 (1/M).
    #[arg(long, allow_negative_numbers = true)]
    pub inv_m: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Both,
    Particle,
    Antiparticle,
}

#[derive(Debug, Args)]
pub struct LevelsArgs {
    #[command(flatten)]
    pub system: SystemArgs,

    /// Quantum numbers: `a..b` (inclusive), `a..b:step`, or `a,b,c`.
    #[arg(long, default_value = "0..4")]
    pub n: String,

    #[arg(long, value_enum, default_value_t = BranchArg::Both)]
    pub branch: BranchArg,

    /// Constant-mass formula (ignores m1).
    #[arg(long)]
    pub constant_mass: bool,

    /// The A2 = A4 = 0 formula (requires V2 = m1c^2).
    #[arg(long, conflicts_with_all = ["constant_mass", "complex"])]
    pub special_case: bool,

    /// Complex parameterization V1 = (u1+iu2)^2, V2 = (u1+iu2)(1+2u3), beta = 1.
    #[arg(long, requires_all = ["u1", "u2", "u3"])]
    pub complex: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub u1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub u3: Option<f64>,
    /// Scale Q' of the complex case.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub q_prime: f64,
    /// Read the complex constant-mass formula with the unprimed V1~ literally.
    #[arg(long)]
    pub strict_literal: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub molecule: String,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-6)]
    pub min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-4)]
    pub max: f64,
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    /// Omit the 1/M = 0 row.
    #[arg(long)]
    pub no_limit_row: bool,
}

#[derive(Debug, Args)]
pub struct WavefnArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Largest x sampled.
    #[arg(long, allow_negative_numbers = true, default_value_t = 5.0)]
    pub x_max: f64,
    #[arg(long, default_value_t = 101)]
    pub samples: usize,
    /// Scale psi to unit norm (needs Re L > 0).
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "H2")]
    pub molecule: String,
    /// Number of levels compared (n = 0..levels-1).
    #[arg(long, default_value_t = 5)]
    pub levels: usize,
    #[arg(long, default_value_t = 4096)]
    pub points: usize,
    /// Relative tolerance for a row to count as matched.
    #[arg(long, allow_negative_numbers = true, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 4096)]
    pub points: usize,
}
