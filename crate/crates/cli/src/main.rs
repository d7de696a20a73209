use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use txtex_core::experiments::{run_experiment, write_outputs, ExperimentConfig, EXPERIMENTS};
use txtex_core::verify::verify_suite;
use txtex_core::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

#[derive(Parser)]
#[command(name = "txtex-lab", about = "Resource-bounded learning experiments and property suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment and write its report files.
    Run {
        #[arg(long)]
        experiment: String,
        /// JSON config; its `experiment` field, if set, must match.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a property suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// List families, agents or experiments.
    List { what: Listing },
}

#[derive(Clone, Copy, ValueEnum)]
enum Listing {
    Families,
    Agents,
    Experiments,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("txtex-lab: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn exit_for(e: &Error) -> ExitCode {
    match e {
        Error::Unknown { .. } | Error::UnknownLearner(_) | Error::InvalidArgument(_) => usage(e),
        Error::BudgetExceeded(_) => {
            eprintln!("txtex-lab: {e}");
            ExitCode::from(EXIT_PARTIAL)
        }
        _ => {
            eprintln!("txtex-lab: {e}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn load_config(experiment: &str, path: Option<&PathBuf>, out: &PathBuf) -> Result<ExperimentConfig, Error> {
    let mut cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            let mut raw: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", p.display())))?;
            if let Some(obj) = raw.as_object_mut() {
                match obj.get("experiment").and_then(|v| v.as_str()) {
                    Some(name) if name != experiment => {
                        return Err(Error::InvalidArgument(format!(
                            "config names experiment `{name}`, command line `{experiment}`"
                        )))
                    }
                    _ => {
                        obj.insert("experiment".into(), experiment.into());
                    }
                }
            }
            ExperimentConfig::from_json(&raw.to_string())?
        }
        None => ExperimentConfig::named(experiment),
    };
    cfg.out = Some(out.display().to_string());
    cfg.with_env_seed()
}

fn run(experiment: &str, config: Option<&PathBuf>, out: &PathBuf) -> ExitCode {
    let cfg = match load_config(experiment, config, out) {
        Ok(c) => c,
        Err(e) => return exit_for(&e),
    };
    let result = match run_experiment(&cfg) {
        Ok(r) => r,
        Err(e) => return exit_for(&e),
    };
    if let Err(e) = write_outputs(&cfg, &result, out) {
        return exit_for(&e);
    }
    if let Some(checks) = result.report.get("checks").and_then(|c| c.as_object()) {
        for (name, ok) in checks {
            let status = if ok.as_bool() == Some(true) { "PASS" } else { "FAIL" };
            println!("{status} {name}");
        }
    }
    println!("wrote {} rows to {}", result.csv.lines().count().saturating_sub(1), out.display());
    if result.partial {
        ExitCode::from(EXIT_PARTIAL)
    } else if !result.passed {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn verify(suite: &str) -> ExitCode {
    match verify_suite(suite) {
        Ok(summary) => {
            print!("{}", summary.render());
            if summary.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
        Err(e) => exit_for(&e),
    }
}

fn list(what: Listing) -> ExitCode {
    match what {
        Listing::Experiments => EXPERIMENTS.iter().for_each(|e| println!("{e}")),
        Listing::Agents => {
            for spec in txtex_core::agents::catalog() {
                println!("{}", serde_json::to_string(&spec).expect("spec serializes"));
            }
        }
        Listing::Families => match txtex_core::families::catalog() {
            Ok(families) => {
                for f in families {
                    println!("{}", serde_json::to_string(&f.manifest()).expect("manifest serializes"));
                }
            }
            Err(e) => return exit_for(&e),
        },
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Run { experiment, config, out } => run(experiment, config.as_ref(), out),
        Command::Verify { suite } => verify(suite),
        Command::List { what } => list(*what),
    }
}
