use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ghzcanon::cli::{cmd_analyze, cmd_canon, cmd_ghz, cmd_lhv, cmd_selftest, Outcome, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "ghzcanon", version, about = "Anticommuting Hermitian pairs: classification, canonical form, GHZ checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct PairArgs {
    /// Matrix file for A
    #[arg(long)]
    a: PathBuf,
    /// Matrix file for B
    #[arg(long)]
    b: PathBuf,
}

#[derive(clap::Args)]
struct Common {
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the phase relation AB = ωBA
    Analyze {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Reduce an anticommuting pair to canonical blocks
    Canon {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Build and check the GHZ operator set from local pairs
    Ghz {
        /// One local pair per party, as A.json,B.json
        #[arg(long = "pairs", value_parser = parse_pair, required = true)]
        pairs: Vec<(PathBuf, PathBuf)>,
        #[command(flatten)]
        common: Common,
    },
    /// Count local hidden-variable assignments matching target values
    Lhv {
        #[arg(long = "pairs", value_parser = parse_pair, required = true)]
        pairs: Vec<(PathBuf, PathBuf)>,
        /// Values for O_1..O_n and the product of the A's, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        targets: Option<Vec<f64>>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the built-in invariant suites
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, hide = true)]
        force_fail: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<(PathBuf, PathBuf), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.is_empty() && !b.is_empty() => Ok((a.into(), b.into())),
        _ => Err(format!("expected A.json,B.json, got {s:?}")),
    }
}

fn emit(outcome: &Outcome, out: Option<&PathBuf>) -> u8 {
    let text = outcome.render();
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = outcome.error() {
        eprintln!("error: {e}");
    }
    outcome.exit_code
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let code = match cli.command {
        Command::Analyze { pair, common } => emit(&cmd_analyze(&pair.a, &pair.b, common.tol), common.out.as_ref()),
        Command::Canon { pair, common } => emit(&cmd_canon(&pair.a, &pair.b, common.tol), common.out.as_ref()),
        Command::Ghz { pairs, common } => emit(&cmd_ghz(&pairs, common.tol), common.out.as_ref()),
        Command::Lhv { pairs, targets, common } => {
            emit(&cmd_lhv(&pairs, targets.as_deref(), common.tol), common.out.as_ref())
        }
        Command::Selftest { seed, force_fail, out } => emit(&cmd_selftest(seed, force_fail), out.as_ref()),
    };
    ExitCode::from(code)
}
