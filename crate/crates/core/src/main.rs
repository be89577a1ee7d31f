use clap::{Parser, Subcommand};
use ehrhart_local::job::{run, Command, JobConfig};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact local formulas for Ehrhart coefficients of lattice polygons.
#[derive(Parser)]
#[command(name = "ehrhart-local", version, about)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(clap::Args)]
struct Common {
    /// Job description (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Dilation factor, overrides the config.
    #[arg(long)]
    t: Option<i64>,
    /// Exit nonzero when a verification does not match.
    #[arg(long)]
    strict: bool,
    /// Output directory for reports and figures.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Compute the per-face weight table.
    Mu(Common),
    /// Compare the local coefficient formula against interpolated counts.
    Ehrhart(Common),
    /// Check the per-face lattice point accounting at a dilation.
    VerifyEq1(Common),
    /// Check the per-face volume accounting at a dilation, both readings.
    VerifyEq2(Common),
    /// Check the translated-region tiling on a window.
    Tiling(Common),
    /// Write SVG figures of regions, the tiling and the domain complex.
    Render(Common),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        CliCommand::Mu(c) => (Command::Mu, c),
        CliCommand::Ehrhart(c) => (Command::Ehrhart, c),
        CliCommand::VerifyEq1(c) => (Command::VerifyEq1, c),
        CliCommand::VerifyEq2(c) => (Command::VerifyEq2, c),
        CliCommand::Tiling(c) => (Command::Tiling, c),
        CliCommand::Render(c) => (Command::Render, c),
    };
    let config = match JobConfig::from_path(&common.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ehrhart-local: {}", e);
            return ExitCode::from(2);
        }
    };
    match run(&config, command, common.t, &common.out) {
        Ok(outcome) => {
            println!("{}", outcome.summary);
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            if common.strict && !outcome.all_matched {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("ehrhart-local: {}", e);
            ExitCode::from(2)
        }
    }
}
