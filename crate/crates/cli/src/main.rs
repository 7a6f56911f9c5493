use std::process::ExitCode;

use clap::{Parser, Subcommand};
use foldcore_cli::{commands, CliError, RunArgs, RunConfig};

type Handler = fn(&RunConfig) -> Result<(), CliError>;

/// Fold, simulate and analyze planar difference systems.
#[derive(Parser)]
#[command(name = "foldcore", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the core, passive equation and initial values of a folding.
    Fold(RunArgs),
    /// Iterate the system and write the orbit as CSV (n,x,y).
    Simulate(RunArgs),
    /// Compare direct orbits with core + passive reconstructions from sampled initial points.
    Verify(RunArgs),
    /// Predict and observe the long-run behavior of a quadratic-core orbit.
    Classify(RunArgs),
    /// Bifurcation sweep of the quadratic core over b, as CSV (b,sample_index,r,lyapunov).
    Sweep(RunArgs),
    /// Lyapunov exponent estimate.
    Lyapunov(RunArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (args, cmd): (&RunArgs, Handler) = match &cli.command {
        Command::Fold(a) => (a, commands::fold),
        Command::Simulate(a) => (a, commands::simulate),
        Command::Verify(a) => (a, commands::verify),
        Command::Classify(a) => (a, commands::classify),
        Command::Sweep(a) => (a, commands::sweep),
        Command::Lyapunov(a) => (a, commands::lyapunov),
    };
    let cfg = args.resolve()?;
    if args.dump_config {
        println!("{}", cfg.to_json());
        return Ok(());
    }
    cmd(&cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("foldcore: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
