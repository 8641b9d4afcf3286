use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use interferosim::cli::{run_analyze, run_calibrate, run_simulate, CliError};

#[derive(Parser)]
#[command(
    name = "interferosim",
    about = "Simulate and analyze singles/coincidence interferograms for linear, \
             semi-nonlinear and SU(1,1) interferometers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an interferometer model from a TOML config and write a CSV trace.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Suppress the fringe carrier; emit envelope samples (coarse delay
        /// grids permitted).
        #[arg(long)]
        envelope_only: bool,
        /// Append a machine-readable JSON summary block.
        #[arg(long)]
        machine: bool,
    },
    /// Summarize each channel of an existing CSV trace.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        machine: bool,
    },
    /// Klyshko efficiencies, transmissions and zero-delay calibration.
    Calibrate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        machine: bool,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            envelope_only,
            machine,
        } => run_simulate(&read_input(&config)?, &out, envelope_only, machine),
        Command::Analyze { input, machine } => run_analyze(&read_input(&input)?, machine),
        Command::Calibrate { config, machine } => run_calibrate(&read_input(&config)?, machine),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
