use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use molsim::scenario::{resolve, run, ScenarioConfig, PRESETS};
use molsim::Error;

#[derive(Parser)]
#[command(name = "molsim", version, about = "Ultracold atom-molecule simulations from scenario files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a preset or a TOML scenario file.
    Run {
        /// Preset name (see `molsim list`) or path to a config file.
        target: String,
        /// Output directory; defaults to the config's `output_dir` or `out/<name>`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for sweep points.
        #[arg(long)]
        workers: Option<usize>,
        /// Dotted `key=value` assignment applied before validation, e.g. `scenario.params.t_j=5`.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// List the figure presets.
    List,
    /// Parse and validate a config without running it.
    Validate {
        target: String,
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

fn exit_for(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Config(_) | Error::InvalidParameter { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn out_dir(config: &ScenarioConfig, out: Option<PathBuf>) -> PathBuf {
    out.or_else(|| config.output_dir.clone()).unwrap_or_else(|| PathBuf::from("out").join(&config.name))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List => {
            println!("{:<16} {:<12} description", "preset", "figure");
            for p in PRESETS {
                println!("{:<16} {:<12} {}", p.name, p.figure, p.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Validate { target, overrides } => match resolve(&target, &overrides) {
            Ok(c) => {
                println!("ok: {} ({})", c.name, c.scenario.kind());
                ExitCode::SUCCESS
            }
            Err(e) => exit_for(&e),
        },
        Command::Run { target, out, workers, overrides } => {
            let config = match resolve(&target, &overrides) {
                Ok(c) => c,
                Err(e) => return exit_for(&e),
            };
            if workers == Some(0) {
                eprintln!("error: --workers must be at least 1");
                return ExitCode::from(2);
            }
            let dir = out_dir(&config, out);
            match run(&config, &dir, workers) {
                Ok(report) => {
                    let m = &report.manifest;
                    for o in &m.outputs {
                        println!("{}  {} rows", report.out_dir.join(&o.file).display(), o.rows);
                    }
                    println!("{} of {} points failed; manifest at {}", m.failed_points, m.points.len(), report.out_dir.join("manifest.json").display());
                    if m.all_failed() {
                        ExitCode::from(3)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => exit_for(&e),
            }
        }
    }
}
