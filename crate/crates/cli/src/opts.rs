use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use phasekit::io::OutputFormat;

/// Discrete Wigner functions, stabilizer states and Clifford operators for
/// odd-dimensional qudits.
#[derive(Debug, Parser)]
#[command(name = "phasekit", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Local dimension (odd, at least 3).
    #[arg(long, global = true)]
    pub d: Option<u64>,
    /// Number of particles.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Seed for every random stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output directory; falls back to the config file, then $PHASEKIT_OUT_DIR.
    #[arg(long, global = true, env = "PHASEKIT_OUT_DIR")]
    pub out: Option<PathBuf>,
    /// Largest phase space (d^{2n}) to enumerate.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// TOML or JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Pgm,
    Svg,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => OutputFormat::Csv,
            Format::Pgm => OutputFormat::Pgm,
            Format::Svg => OutputFormat::Svg,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner function of a state file, or statistics of an exported grid.
    Wigner {
        /// State JSON.
        #[arg(required_unless_present = "from_grid")]
        state: Option<PathBuf>,
        /// Re-read a grid CSV and print min/sum.
        #[arg(long, conflicts_with = "state")]
        from_grid: Option<PathBuf>,
        /// Pixels per phase-space point in PGM/SVG output.
        #[arg(long, default_value_t = 16)]
        cell: usize,
    },
    /// Stabilizer or negative-Wigner verdict (exit 0, 1; 2 on error).
    Classify { state: PathBuf },
    /// Isotropic submodule and stabilizer code counts.
    Count {
        #[arg(value_name = "N")]
        particles: u32,
        /// Code rank: the isotropic submodules have size d^m.
        #[arg(value_name = "M")]
        rank: u32,
        #[arg(value_name = "D")]
        dim: u64,
    },
    /// All stabilizer states for --d and --n.
    Enumerate,
    /// Forward and sampled converse checks of the classifier.
    Harness {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Grids, certificate and overlay for the mixed-state counterexample.
    Counterexample {
        #[arg(long, default_value_t = 32)]
        cell: usize,
    },
    /// Field factorization check and single/multi-particle stabilizer gap.
    Galois {
        #[arg(value_name = "P")]
        prime: u64,
        #[arg(value_name = "N")]
        degree: usize,
        /// Field spec JSON overriding the default polynomial.
        #[arg(long)]
        field: Option<PathBuf>,
    },
    #[command(subcommand)]
    Clifford(CliffordCommand),
}

#[derive(Debug, Subcommand)]
pub enum CliffordCommand {
    /// Unitary for a Clifford JSON `{S, a, d, n}`.
    Synth { file: PathBuf },
    /// Affine label of a unitary in operator JSON (exit 0 Clifford, 1 not).
    Recognize { file: PathBuf },
}
