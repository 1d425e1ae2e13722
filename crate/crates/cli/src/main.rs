use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hazefuse::harness::{self, RunOptions};
use hazefuse::weather::load_network;
use hazefuse::world::validate_scenario;
use hazefuse::Error;

const DICT_ENV: &str = "HAZEFUSE_DICT";

#[derive(Parser)]
#[command(name = "hazefuse", version, about = "Weather-adaptive maritime sensor fusion simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a scenario and write its event log and metrics.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        /// Overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        metrics: PathBuf,
    },
    /// Check a scenario file and list every problem found.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Score an existing event log against its scenario.
    Metrics {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Io(_) => 3,
        _ => 2,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code(&err))
}

fn report_diagnostics(diagnostics: &[String]) -> ExitCode {
    for d in diagnostics {
        eprintln!("{d}");
    }
    ExitCode::from(2)
}

fn run_options(seed: Option<u64>) -> Result<RunOptions, Error> {
    let mut options = RunOptions {
        seed,
        ..RunOptions::default()
    };
    if let Some(path) = std::env::var_os(DICT_ENV) {
        options.network = load_network(PathBuf::from(path))?;
    }
    Ok(options)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { scenario } => {
            if !scenario.exists() {
                return fail(Error::Io(std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    format!("{} not found", scenario.display()),
                )));
            }
            let diagnostics = validate_scenario(&scenario);
            if !diagnostics.is_empty() {
                return report_diagnostics(&diagnostics);
            }
            println!("ok");
            ExitCode::SUCCESS
        }
        Command::Run {
            scenario,
            seed,
            log,
            metrics,
        } => {
            if !scenario.exists() {
                return fail(Error::Io(std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    format!("{} not found", scenario.display()),
                )));
            }
            let diagnostics = validate_scenario(&scenario);
            if !diagnostics.is_empty() {
                return report_diagnostics(&diagnostics);
            }
            let result = run_options(seed).and_then(|opts| harness::run(&scenario, &log, &metrics, &opts));
            match result {
                Ok(report) => {
                    println!(
                        "ticks: {}  fused recall: {}  alerts: {}",
                        report.ticks,
                        report.fused.recall.map_or("n/a".into(), |r| format!("{r:.3}")),
                        report.alert_lead_times.len()
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Metrics { log, scenario } => match harness::compute_metrics(&log, &scenario)
            .and_then(|report| harness::metrics_json(&report))
        {
            Ok(json) => {
                println!("{json}");
                ExitCode::SUCCESS
            }
            Err(e) => fail(e),
        },
    }
}
