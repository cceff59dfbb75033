use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use sabgg::cli::{run_command, Command, RunOptions};
use sabgg::config::parse_config;
use sabgg::Probability;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Cost breakdown at the configured rho
    Analyze,
    /// Monte Carlo statistics for both strategies
    Simulate,
    /// Cost curve over a rho grid
    Sweep,
    /// Cost-minimizing rho
    Optimize,
}

#[derive(Debug, Parser)]
#[command(name = "sabgg", about = "Alliance-based drone swarm defense: analysis, simulation and optimization")]
struct Args {
    #[arg(value_enum)]
    command: Cmd,
    /// Configuration file (`key = value` lines)
    #[arg(long)]
    config: PathBuf,
    /// Ally acceptance probability
    #[arg(long)]
    rho: Option<f64>,
    /// Simulated episodes per strategy
    #[arg(long)]
    episodes: Option<u64>,
    /// Simulation seed
    #[arg(long)]
    seed: Option<u64>,
    /// Write the CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Simulation worker threads
    #[arg(long)]
    workers: Option<usize>,
}

fn run(args: Args) -> sabgg::Result<()> {
    let text = std::fs::read_to_string(&args.config)?;
    let mut config = parse_config(&text)?;
    if let Some(rho) = args.rho {
        config.rho = Probability::new(rho)?;
    }
    if let Some(episodes) = args.episodes {
        if episodes == 0 {
            return Err(sabgg::Error::Domain("--episodes must be >= 1".into()));
        }
        config.episodes = episodes;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let command = match args.command {
        Cmd::Analyze => Command::Analyze,
        Cmd::Simulate => Command::Simulate,
        Cmd::Sweep => Command::Sweep,
        Cmd::Optimize => Command::Optimize,
    };
    let options = RunOptions { out: args.out, workers: args.workers };
    run_command(command, &config, &options, &mut std::io::stdout().lock())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sabgg: {e}");
            ExitCode::FAILURE
        }
    }
}
