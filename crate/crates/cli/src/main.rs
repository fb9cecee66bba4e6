use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

mod commands;
mod config;

/// Static self-gravitating elastic matter distributions.
#[derive(Parser)]
#[command(name = "gravelast", version, disable_help_subcommand = true)]
struct Cli {
    /// Path to the JSON run configuration.
    #[arg(long)]
    config: PathBuf,

    /// Output directory for profiles and summaries (default: current).
    #[arg(long)]
    output: Option<PathBuf>,

    /// Worker threads for parameter sweeps.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Reserved for randomized test grids.
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests are not usage errors
            if err.use_stderr() {
                eprintln!("{err}");
                return ExitCode::from(1);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match commands::run(&cli.config, cli.output, cli.jobs, cli.seed) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code as u8)
        }
    }
}
