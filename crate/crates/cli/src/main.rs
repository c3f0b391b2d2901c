use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use memfuzz_cli::commands::{self, Session, SweepAxis};
use memfuzz_cli::config::{RunConfig, WindowDoc, SCHEMA_VERSION};
use memfuzz_cli::presets::Preset;
use memfuzz_cli::{CliError, Result};
use memfuzz_core::fuzzy::defaults;

/// Memristor simulation with closed-form and fuzzy window functions.
#[derive(Debug, Parser)]
#[command(name = "memfuzz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// JSON run configuration.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Named scenario: fig3, fig5, fig6, joglekar_vs_fuzzy.
    #[arg(long, value_name = "NAME")]
    preset: Option<Preset>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one circuit and write its trace as CSV.
    Simulate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Tabulate a window function over (drive, x).
    Surface {
        #[command(flatten)]
        source: Source,
        /// Window as JSON, e.g. '{"kind": "joglekar", "p": 10}'. Defaults to the circuit's window.
        #[arg(long, value_name = "JSON")]
        window: Option<String>,
        /// Points along the drive axis (current or voltage).
        #[arg(long, default_value_t = 21)]
        n1: usize,
        /// Points along the state axis.
        #[arg(long, default_value_t = 21)]
        n2: usize,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the same circuit under several windows.
    Compare {
        #[command(flatten)]
        source: Source,
        /// Window as JSON; repeat for each window (overrides the config's list).
        #[arg(long = "window", value_name = "JSON")]
        windows: Vec<String>,
        /// Output directory.
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Summarize one run per parameter value.
    Sweep {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        axis: SweepAxis,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        values: Vec<f64>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print the preset configurations as JSON.
    Presets {
        /// Only this preset.
        name: Option<Preset>,
    },
    /// Print the default fuzzy-system documents as JSON.
    Systems,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("memfuzz: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Simulate { source, out: path } => {
            let session = open(&source)?;
            let path = session.output_path(path.as_deref(), "simulate.csv");
            commands::simulate_to_file(&session.circuit()?, &path, &mut out)?;
        }
        Command::Surface { source, window, n1, n2, out: path } => {
            let (spec, session) = match window {
                Some(json) => {
                    let session = match (&source.config, source.preset) {
                        (None, None) => None,
                        _ => Some(open(&source)?),
                    };
                    let base = session.as_ref().map(|s| s.base_dir.clone()).unwrap_or_else(|| ".".into());
                    (WindowDoc::from_json(&json)?.resolve(&base)?, session)
                }
                None => {
                    let session = open(&source)?;
                    (session.circuit()?.window, Some(session))
                }
            };
            let path = match &session {
                Some(s) => s.output_path(path.as_deref(), "surface.csv"),
                None => path.unwrap_or_else(|| "surface.csv".into()),
            };
            let rows = commands::surface_to_file(&spec, n1, n2, &path)?;
            writeln!(out, "wrote {rows} rows to {}", path.display()).map_err(stdout_err)?;
        }
        Command::Compare { source, windows, out: dir } => {
            let session = open(&source)?;
            let docs = if windows.is_empty() {
                session.config.compare_windows().unwrap_or_default()
            } else {
                windows.iter().map(|w| WindowDoc::from_json(w)).collect::<Result<Vec<_>>>()?
            };
            let specs = docs.iter().map(|d| session.resolve_window(d)).collect::<Result<Vec<_>>>()?;
            let dir = dir.unwrap_or_else(|| PathBuf::from("compare"));
            commands::compare(&session.circuit()?, &specs, &dir, &mut out)?;
        }
        Command::Sweep { source, axis, values, out: path } => {
            let session = open(&source)?;
            let path = session.output_path(path.as_deref(), "sweep.csv");
            commands::sweep_to_file(&session.circuit()?, axis, &values, &path, &mut out)?;
        }
        Command::Presets { name } => {
            let presets: Vec<Preset> = name.map(|p| vec![p]).unwrap_or_else(|| Preset::ALL.to_vec());
            let dump: serde_json::Map<String, serde_json::Value> = presets
                .into_iter()
                .map(|p| {
                    let cfg = RunConfig {
                        schema_version: SCHEMA_VERSION,
                        scenario: Some(p),
                        circuit: p.circuit(),
                        output: None,
                        compare: p.compare_windows().map(|windows| memfuzz_cli::config::CompareDoc { windows }),
                    };
                    (p.name().to_string(), serde_json::to_value(cfg).expect("serializable"))
                })
                .collect();
            print_json(&mut out, &dump)?;
        }
        Command::Systems => {
            let dump = serde_json::json!({
                "fuzzy": defaults::current_window::<f64>().to_doc(),
                "fuzzy_threshold": defaults::voltage_threshold_window::<f64>().to_doc(),
            });
            print_json(&mut out, &dump)?;
        }
    }
    Ok(())
}

fn open(source: &Source) -> Result<Session> {
    Session::open(source.config.as_deref(), source.preset)
}

fn print_json(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))?;
    writeln!(out, "{text}").map_err(stdout_err)
}

fn stdout_err(e: io::Error) -> CliError {
    CliError::io(Path::new("<stdout>").display().to_string(), e)
}
