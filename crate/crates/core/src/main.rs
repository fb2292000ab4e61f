use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use adhesion::scenario::{self, Overrides, ScenarioConfig};
use adhesion::verify;
use adhesion::Error;

#[derive(Parser)]
#[command(
    name = "adhesion",
    version,
    about = "Scenario runner and verifier for the adhesion (inviscid Burgers) limit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its artifacts.
    Run {
        /// Scenario TOML file.
        config: PathBuf,
        /// Directory the artifacts are written into (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Override the scenario's integrator step.
        #[arg(long)]
        step: Option<f64>,
        /// Override the active-set tolerance used in report summaries.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run a named verification suite and print its report.
    Verify {
        /// One of: convergence, uniqueness, geometry, hgrad, semiconcavity, a3.
        suite: String,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override integrator steps inside the suite.
        #[arg(long)]
        step: Option<f64>,
        /// Override the trajectory meeting tolerance inside the suite.
        #[arg(long)]
        tol: Option<f64>,
    },
}

const EXIT_OK: u8 = 0;
const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidConfig { .. } => EXIT_CONFIG,
        _ => EXIT_FAILURE,
    }
}

fn run_command(cli: Cli) -> u8 {
    match cli.command {
        Command::Run {
            config,
            out,
            step,
            tol,
        } => {
            let parsed = match ScenarioConfig::load(&config) {
                Ok(c) => c,
                Err(err) => {
                    eprintln!("error: {err}");
                    // Everything that can go wrong before the run starts is
                    // a configuration problem, unreadable file included.
                    return EXIT_CONFIG;
                }
            };
            let overrides = Overrides { step, tol };
            match scenario::run(&parsed, &out, &overrides) {
                Ok(outcome) => {
                    for name in &outcome.written {
                        println!("wrote {}", name);
                    }
                    if outcome.invariant_failures.is_empty() {
                        EXIT_OK
                    } else {
                        for failure in &outcome.invariant_failures {
                            eprintln!("invariant violated: {failure}");
                        }
                        EXIT_FAILURE
                    }
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    exit_code_for(&err)
                }
            }
        }
        Command::Verify {
            suite,
            seed,
            step,
            tol,
        } => {
            let overrides = Overrides { step, tol };
            match verify::run_suite(&suite, seed, &overrides) {
                Ok(report) => {
                    print!("{}", report.render());
                    if report.passed() {
                        EXIT_OK
                    } else {
                        EXIT_FAILURE
                    }
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    exit_code_for(&err)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run_command(Cli::parse()))
}
