//! `symmono`: symmetries, monotones and reachability certificates for
//! Lindblad generators, from the command line.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{MonotoneArgs, SymChoice};
use error::CliError;
use input::{load_model, load_state, parse_times};

#[derive(Debug, Parser)]
#[command(
    name = "symmono",
    version,
    about = "Symmetries and monotones of Markovian quantum evolutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output file; standard output if omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomly generated models (`--model random:d=D,jumps=K`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance override: null-space tolerance for `symmetries`, symmetry
    /// check for `monotone`/`contour`, relative slack for `exclude`.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct ModelArg {
    /// Model JSON file, or a preset: `qubit_dephasing:g=G`,
    /// `davies_qubit:a=A,b=B`, `random:d=D,jumps=K`.
    #[arg(long)]
    model: String,
}

#[derive(Debug, Args)]
struct SymArgs {
    /// `lindbladian` (M = L), `hamiltonian` (M = −i[H, ·]) or a path to a
    /// superoperator JSON file.
    #[arg(long, default_value = "lindbladian")]
    sym: SymChoice,

    /// Weight λ ≥ 0 of the left multiplication in the quadratic form.
    #[arg(long, default_value_t = 0.5)]
    lambda: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate ρ(t) = exp(tL)(ρ) as CSV.
    Evolve {
        #[command(flatten)]
        model: ModelArg,
        /// State JSON file or `bloch:x,y,z`.
        #[arg(long)]
        state: String,
        /// Time grid `t0:t1:dt`, both ends included.
        #[arg(long)]
        times: String,
    },
    /// Report commutants, conserved quantities and fixed points as JSON.
    Symmetries {
        #[command(flatten)]
        model: ModelArg,
    },
    /// Trace a monotone along the trajectory of a state as CSV.
    Monotone {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        state: String,
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long)]
        times: String,
    },
    /// Try to prove that `--to` is unreachable from `--from`.
    Exclude {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Comma-separated λ values for the monotone family.
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2")]
        lambdas: Vec<f64>,
    },
    /// Evaluate a monotone on the y = 0 slice of the Bloch ball as CSV.
    Contour {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        state: String,
        #[command(flatten)]
        sym: SymArgs,
        #[arg(long, default_value = "xz")]
        plane: String,
        /// Points per axis.
        #[arg(long, default_value_t = 101)]
        grid: usize,
    },
}

fn check_lambda(lambda: f64) -> Result<f64, CliError> {
    if lambda.is_finite() && lambda >= 0.0 {
        Ok(lambda)
    } else {
        Err(CliError::input(format!("λ must be finite and ≥ 0, got {lambda}")))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Evolve { model, state, times } => {
            let l = load_model(&model.model, cli.seed)?;
            commands::evolve(&l, &load_state(state)?, &parse_times(times)?, out)
        }
        Command::Symmetries { model } => commands::symmetries(&load_model(&model.model, cli.seed)?, cli.tol, out),
        Command::Monotone {
            model,
            state,
            sym,
            times,
        } => {
            let l = load_model(&model.model, cli.seed)?;
            let args = MonotoneArgs {
                sym: &sym.sym,
                lambda: check_lambda(sym.lambda)?,
                tol: cli.tol,
            };
            commands::monotone(&l, &load_state(state)?, &parse_times(times)?, &args, out)
        }
        Command::Exclude {
            model,
            from,
            to,
            lambdas,
        } => {
            let l = load_model(&model.model, cli.seed)?;
            let lambdas = lambdas
                .iter()
                .map(|&x| check_lambda(x))
                .collect::<Result<Vec<_>, _>>()?;
            commands::exclude(&l, &load_state(from)?, &load_state(to)?, &lambdas, cli.tol, out)
        }
        Command::Contour {
            model,
            state,
            sym,
            plane,
            grid,
        } => {
            let l = load_model(&model.model, cli.seed)?;
            let args = MonotoneArgs {
                sym: &sym.sym,
                lambda: check_lambda(sym.lambda)?,
                tol: cli.tol,
            };
            commands::contour(&l, &load_state(state)?, &args, plane, *grid, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = !e.use_stderr();
            let _ = e.print();
            return if informational {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("symmono: {e}");
            e.exit_code()
        }
    }
}
