mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use bigalg::rep::DEFAULT_DIM_BOUND;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::UsageError;

#[derive(Parser, Debug)]
#[command(
    name = "bigalg",
    version,
    about = "Exact big, medium and Kirillov algebras of sl_n representations"
)]
pub struct Cli {
    /// Seed for the random section points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for cached representations; the BIGALG_CACHE environment variable takes precedence.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Largest module dimension that may be built.
    #[arg(long, global = true, default_value_t = DEFAULT_DIM_BOUND)]
    pub dim_bound: usize,
    /// Write the JSON report to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Module {
    /// Rank plus one of sl_n.
    #[arg(long)]
    pub n: usize,
    /// Highest weight as fundamental-weight coefficients, e.g. 1,1.
    #[arg(long)]
    pub mu: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum TorusArg {
    Standard,
    HPlusE,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum RecipeArg {
    Identity,
    SetC3Zero,
    Pullback,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the irreducible module and report its weights.
    Rep(Module),
    /// Calibrated big generators and their restriction to the companion section.
    Ops {
        #[command(flatten)]
        module: Module,
        /// Only list degrees and calibration scalars.
        #[arg(long)]
        list: bool,
    },
    /// Hilbert series from the fiber at e against the product formula.
    Hilbert(Module),
    /// Relations among the generators up to a degree, optionally checking a relation file.
    Relations {
        #[command(flatten)]
        module: Module,
        /// Highest degree searched; defaults to twice the Coxeter number.
        #[arg(long)]
        max_degree: Option<i64>,
        /// Relation JSON file to verify.
        #[arg(long, value_name = "FILE")]
        verify: Option<PathBuf>,
        /// Comma-separated subset of generators to use, e.g. M1,M2.
        #[arg(long)]
        generators: Option<String>,
    },
    /// Brylinski filtration of a weight space and its jump series.
    Brylinski {
        #[command(flatten)]
        module: Module,
        /// Dominant weight of the module.
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "standard")]
        torus: TorusArg,
    },
    /// Lusztig's q-analogue of weight multiplicity.
    Qanalogue {
        #[command(flatten)]
        module: Module,
        #[arg(long)]
        lambda: String,
    },
    /// Multiplicity algebra of a weight space.
    Multalg {
        #[command(flatten)]
        module: Module,
        #[arg(long)]
        lambda: String,
    },
    /// Principal spectrum, or skeleton branches along a parameter grid as CSV.
    Spectrum {
        #[command(flatten)]
        module: Module,
        /// Evaluate at the principal semisimple point.
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        at_principal: bool,
        /// Parameter grid min:max:steps.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// CSV output file; required with --grid.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Skeleton recipe; defaults by n.
        #[arg(long, value_enum)]
        recipe: Option<RecipeArg>,
    },
    /// Diagram automorphism action, coinvariants and the folded comparison (sl_3 only).
    Twining {
        #[command(flatten)]
        module: Module,
        #[arg(long, default_value_t = 8)]
        max_degree: i64,
    },
    /// Run the acceptance table.
    VerifyAll {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long)]
        criteria: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            eprintln!("run with --help for usage");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
