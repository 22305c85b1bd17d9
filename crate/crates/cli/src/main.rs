use std::path::PathBuf;
use std::process::ExitCode;

use absim_cli::commands::{self, EXIT_OK, EXIT_SCENARIO};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "absim", version, about = "Inland-waterway vessel guidance and control simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more scenarios and write their outputs
    Run {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
        /// Output directory (one subdirectory per scenario when several are given)
        #[arg(long, default_value = "absim-out")]
        out: PathBuf,
        /// Also write an SVG map of the run
        #[arg(long)]
        render: bool,
        /// Do not print run summaries
        #[arg(long)]
        quiet: bool,
        /// Number of scenarios simulated in parallel
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Plan the route only and write it as GeoJSON
    Plan {
        scenario: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check scenario files without running them
    Validate {
        #[arg(required = true)]
        scenarios: Vec<PathBuf>,
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ABSIM_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_SCENARIO as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = match cli.command {
        Command::Run { scenarios, out, render, quiet, jobs } => commands::run(&scenarios, &out, render, quiet, jobs),
        Command::Plan { scenario, out } => match commands::plan(&scenario, &out) {
            Ok(()) => EXIT_OK,
            Err(f) => {
                eprintln!("error: {}: {}", scenario.display(), f.message);
                f.code
            }
        },
        Command::Validate { scenarios, quiet } => commands::validate(&scenarios, quiet),
    };
    ExitCode::from(code as u8)
}
