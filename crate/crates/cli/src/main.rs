//! `maxsat-aa`: command-line frontend.
//!
//! Exit codes: 0 YES/success, 1 NO, 2 input error, 3 budget exceeded or
//! UNKNOWN.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Output};

/// Seed used by the random generators when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser, Debug)]
#[command(name = "maxsat-aa", version, about = "MaxSat above average: asat, reduction, kernel, decision")]
struct Cli {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for exhaustive searches (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Drop duplicate literals inside clauses instead of rejecting the input.
    #[arg(long, global = true)]
    lenient: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct InputArg {
    /// DIMACS CNF file, or `-` for standard input.
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sizes, exact asat and width regime.
    Stats(InputArg),
    /// Assignment satisfying at least asat clauses (conditional expectations).
    Solve(InputArg),
    /// Decide whether asat + k clauses can be satisfied.
    Decide {
        #[command(flatten)]
        input: InputArg,
        #[arg(short, long)]
        k: u64,
        /// Largest kernel (live variables) searched exhaustively.
        #[arg(long, default_value_t = maxsat_aa::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Emit the equivalent weighted parity system in lin2 format.
    Reduce {
        #[command(flatten)]
        input: InputArg,
        #[arg(short, long, default_value_t = 0)]
        k: u64,
        /// Emit the rule-reduced kernel and a trace summary instead.
        #[arg(long)]
        kernel: bool,
    },
    /// Exact maximum by exhaustive search.
    Oracle {
        #[command(flatten)]
        input: InputArg,
        /// Also report whether asat + k is reachable.
        #[arg(short, long)]
        k: Option<u64>,
        #[arg(long, default_value_t = maxsat_aa::DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Width-⌈log n'⌉ instance from a 3-CNF; YES for k = 2 iff the input is satisfiable.
    Theorem1 {
        #[command(flatten)]
        input: InputArg,
        /// Density constant with m <= c·n.
        #[arg(short, long)]
        c: usize,
        /// Also write the layout metadata as JSON to this path.
        #[arg(long)]
        meta_out: Option<PathBuf>,
    },
    /// Append `extra` fresh variables, each with clauses (x) and (¬x).
    PadUnits {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        extra: usize,
    },
    /// Random CNF with clause widths in 1..=width.
    RandomCnf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        width: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Random weighted parity system.
    RandomLin2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        arity: usize,
        #[arg(long, default_value_t = 1)]
        weight_max: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let lenient = cli.lenient;
    match cli.command {
        Command::Stats(i) => commands::stats(&commands::read_cnf(&i.input, lenient)?),
        Command::Solve(i) => commands::solve(&commands::read_cnf(&i.input, lenient)?),
        Command::Decide { input, k, budget } => {
            commands::decide(&commands::read_cnf(&input.input, lenient)?, k, budget)
        }
        Command::Reduce { input, k, kernel } => {
            commands::reduce(&commands::read_cnf(&input.input, lenient)?, k, kernel)
        }
        Command::Oracle { input, k, budget } => {
            commands::oracle(&commands::read_cnf(&input.input, lenient)?, k, budget)
        }
        Command::Gen(g) => match g {
            GenCommand::Theorem1 { input, c, meta_out } => commands::gen_theorem1(
                &commands::read_cnf(&input.input, lenient)?,
                c,
                meta_out.as_deref(),
            ),
            GenCommand::PadUnits { input, extra } => {
                commands::gen_pad(&commands::read_cnf(&input.input, lenient)?, extra)
            }
            GenCommand::RandomCnf { n, m, width, seed } => commands::gen_random_cnf(n, m, width, seed),
            GenCommand::RandomLin2 { n, m, arity, weight_max, seed } => {
                commands::gen_random_lin2(n, m, arity, weight_max, seed)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.exit)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}
