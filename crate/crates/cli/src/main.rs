use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use circumfeas_cli::logging::Logger;
use circumfeas_cli::run::{cmd_rates, cmd_reproduce, cmd_run, Overrides};

/// Convex-feasibility solvers: alternating projections vs circumcentered
/// reflections, with convergence-rate diagnostics.
#[derive(Parser)]
#[command(name = "circumfeas", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct CommonFlags {
    /// Directory for trace and report artifacts.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Trace output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Iteration cap per run.
    #[arg(long)]
    max_iter: Option<usize>,
    /// Absolute stopping tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for the sampled checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Also write a gnuplot script next to the CSV traces.
    #[arg(long)]
    emit_plot_script: bool,
}

impl CommonFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            out_dir: self.out_dir.clone(),
            format: self.format.clone(),
            max_iter: self.max_iter,
            tol: self.tol,
            seed: self.seed,
            emit_plot_script: self.emit_plot_script,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one instance described by a JSON config file.
    Run {
        /// Path to the JSON configuration.
        config: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Execute a named benchmark suite and print its pass/fail table.
    Reproduce {
        /// Suite name: family1, family2, errorbound or all.
        suite: String,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Re-analyze the rates of an emitted trace CSV.
    Rates {
        /// Path to the trace CSV.
        trace: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let log = match Logger::from_env() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Run { config, flags } => cmd_run(config, &flags.overrides(), &log),
        Command::Reproduce { suite, flags } => cmd_reproduce(suite, &flags.overrides(), &log),
        Command::Rates { trace } => cmd_rates(trace, &log),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(2))
        }
    }
}
