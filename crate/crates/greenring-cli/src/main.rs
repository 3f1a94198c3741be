use clap::{Parser, Subcommand, ValueEnum};
use greenring_cli::commands::{self, Mode};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "greenring",
    about = "Exact tensor-product decompositions of modules over the Drinfeld double of a Taft algebra",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Rules,
    Oracle,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Rules => Mode::Rules,
            ModeArg::Oracle => Mode::Oracle,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a module expression into indecomposables.
    Decompose {
        /// Root-of-unity order (3 <= n <= 12 supported).
        #[arg(long)]
        n: usize,
        /// Module expression, e.g. "V(2,0) (x) P(2,0)".
        #[arg(long)]
        expr: String,
        /// Which engine to run: the symbolic rules, the brute-force oracle,
        /// or both with a comparison.
        #[arg(long, value_enum, default_value = "rules")]
        mode: ModeArg,
        /// Seed for the oracle's candidate scan order.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Directory for the representation cache (GREENRING_CACHE also works).
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the rules-vs-oracle verification sweep over a label family.
    VerifySweep {
        #[arg(long)]
        n: usize,
        /// Largest syzygy power for string modules in the family.
        #[arg(long, default_value_t = 2)]
        max_m: usize,
        /// Largest band length in the family.
        #[arg(long, default_value_t = 2)]
        max_s: usize,
        /// Comma-separated band parameters, e.g. "0,1,inf".
        #[arg(long, default_value = "0,1,inf")]
        etas: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads for the pair loop.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write a JSON-lines report, one record per pair.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the dual of a module expression.
    Dual {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
    /// Print the dimension of a module expression.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
    },
}

fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Decompose { n, expr, mode, seed, json, cache } => {
            commands::cmd_decompose(n, &expr, mode.into(), seed, json, cache.as_deref())
        }
        Command::VerifySweep { n, max_m, max_s, etas, seed, jobs, report } => {
            commands::cmd_verify_sweep(n, max_m, max_s, &etas, seed, jobs, report.as_deref())
        }
        Command::Dual { n, expr } => commands::cmd_dual(n, &expr),
        Command::Dim { n, expr } => commands::cmd_dim(n, &expr),
    }
}

fn main() {
    // Internal invariant breaches surface as panics; map them to exit 4.
    let code = match std::panic::catch_unwind(run) {
        Ok(code) => code,
        Err(_) => commands::EXIT_INTERNAL,
    };
    std::process::exit(code);
}
