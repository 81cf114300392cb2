//! `moe`: batch experiments on the XOR and inner-product monogamy games.
//! Every subcommand writes one CSV or JSON table and is deterministic for a
//! fixed set of flags. Exit codes: 0 success, 1 input error, 2 verification
//! failure, 3 bound violation.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::exit;

use clap::{Args, Parser, Subcommand};
use moe_core::states::AttackVariant;

#[derive(Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
enum VariantArg {
    Phi,
    Psi,
}

impl From<VariantArg> for AttackVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Phi => AttackVariant::Phi,
            VariantArg::Psi => AttackVariant::Psi,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: output::OutputFormat,
    /// Write the table to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Parser)]
#[command(
    name = "moe",
    version,
    about = "Experiments on monogamy-of-entanglement parity games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the attack bias for every basis choice against (2+sqrt 2)/4.
    VerifyAttack {
        /// Largest qubit count to check (cap 8, 0 for an empty table).
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        /// Attack family to verify.
        #[arg(long, value_enum, default_value = "phi")]
        variant: VariantArg,
        /// Negative control: damage the prepared state first.
        #[arg(long, hide = true)]
        corrupt: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep stripe-operator norms against their ceilings over answer tables.
    BoundsSweep {
        /// Largest qubit count to sweep (cap 5); n=1 is exhaustive.
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Random tables per qubit count for n >= 2.
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate a strategy file exactly and by seeded simulation.
    Game {
        /// Strategy JSON file.
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search answer tables for the best game value.
    BruteForce {
        /// xor and gl enumerate every table; alternating climbs with restarts.
        #[arg(value_enum)]
        mode: commands::SearchMode,
        /// Qubit count (caps: xor 4, gl 2, alternating 6).
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Restarts for the alternating mode.
        #[arg(long, default_value_t = 32)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the masked-average splitting identity for a strategy file.
    DecompResidual {
        /// Strategy JSON file (inner-product game).
        #[arg(long)]
        strategy: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the masked-challenge probability against closed forms.
    ProbS {
        /// Largest qubit count to enumerate (cap 10).
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Spot-check the transform energy identity on random tables.
    Parseval {
        /// Input size exponent: tables have 2^n entries (cap 12).
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Number of random tables.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the two-term split of a sliced strategy.
    Conjecture {
        /// Strategy JSON file (inner-product game).
        #[arg(long)]
        strategy: PathBuf,
        /// Slice-family JSON file.
        #[arg(long)]
        slices: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn dispatch(command: Command) -> (Result<(output::Table, i32), String>, OutputArgs) {
    match command {
        Command::VerifyAttack { n_max, variant, corrupt, output } => {
            (commands::verify_attack(n_max, variant.into(), corrupt), output)
        }
        Command::BoundsSweep { n_max, trials, seed, output } => {
            (commands::bounds_sweep(n_max, trials, seed), output)
        }
        Command::Game { strategy, trials, seed, output } => {
            (commands::game(&strategy, trials, seed), output)
        }
        Command::BruteForce { mode, n, trials, seed, output } => {
            (commands::brute_force(mode, n, trials, seed), output)
        }
        Command::DecompResidual { strategy, output } => {
            (commands::decomp_residual(&strategy), output)
        }
        Command::ProbS { n_max, output } => (commands::prob_s(n_max), output),
        Command::Parseval { n, trials, seed, output } => {
            (commands::parseval(n, trials, seed), output)
        }
        Command::Conjecture { strategy, slices, output } => {
            (commands::conjecture(&strategy, &slices), output)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            exit(code);
        }
    };
    let (result, out_args) = dispatch(cli.command);
    match result {
        Ok((table, code)) => {
            let text = table.render(out_args.format);
            if let Err(e) = output::emit(&text, out_args.out.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                exit(1);
            }
            exit(code);
        }
        Err(message) => {
            eprintln!("error: {message}");
            exit(1);
        }
    }
}
