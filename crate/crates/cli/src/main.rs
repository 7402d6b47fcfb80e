use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use toricres::{cmd_algebra, cmd_betti, cmd_collection, cmd_resolve, load_job, write_atomically, CliError, Format, Method, Outcome, ResolveOptions};

/// Line-bundle resolutions of pushforwards along finite toric morphisms.
#[derive(Parser)]
#[command(name = "toricres", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Bondal classes, their torus strata and the class order.
    Collection { input: PathBuf },
    /// Betti table of the pushforward, read from the strata of the subtorus.
    Betti { input: PathBuf },
    /// Emit a resolution together with its verification report.
    Resolve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        method: Method,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
        /// Seed for the random points of the verification probes.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of classes at which graded Euler characteristics are compared.
        #[arg(long, default_value_t = 10)]
        euler_samples: usize,
    },
    /// Hom dimensions of the Bondal algebra and of the subtorus exit-path algebra.
    Algebra {
        input: PathBuf,
        /// Also print quiver presentations.
        #[arg(long)]
        presentation: bool,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Collection { input } => Ok(Outcome { text: cmd_collection(&load_job(input)?)?, passed: true }),
        Command::Betti { input } => cmd_betti(&load_job(input)?),
        Command::Resolve { input, method, format, seed, euler_samples } => {
            let opts = ResolveOptions { method: *method, format: *format, seed: *seed, euler_samples: *euler_samples };
            cmd_resolve(&load_job(input)?, &opts)
        }
        Command::Algebra { input, presentation } => {
            Ok(Outcome { text: cmd_algebra(&load_job(input)?, *presentation)?, passed: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomically(path, &outcome.text) {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code() as u8);
            }
        }
        None => print!("{}", outcome.text),
    }
    if !outcome.passed {
        eprintln!("error: verification failed");
    }
    ExitCode::from(outcome.exit_code() as u8)
}
