//! Batch front-end: `spindce <command> --config <file> [--out <dir>] [--workers N]`.
//!
//! Each run reads a JSON configuration, writes one or more CSV tables and a
//! `manifest.json` into the output directory and prints a one-line result.
//! Failures map to fixed exit codes:
//!
//! | code | meaning |
//! |-----:|---------|
//! | 0 | success |
//! | 2 | command-line usage error |
//! | 3 | configuration is not valid JSON |
//! | 4 | configuration schema error (unknown, missing or ill-typed key) |
//! | 5 | unknown material name |
//! | 6 | file-system error |
//! | 7 | material catalog could not be loaded |
//! | 8 | invalid physical argument |
//! | 9 | evaluation outside the model's domain |
//! | 10 | lossless resonance crossing |
//! | 11 | quadrature did not converge |
//! | 12 | asymptote fit failed |
//! | 13 | degenerate optimization objective |
//! | 14 | material lacks mechanical data |
//! | 15 | internal consistency failure |

pub mod commands;
pub mod config;
pub mod output;
pub mod validate;

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::materials::{CatalogError, MaterialCatalog};
pub use commands::{execute, CommandOutput};
pub use config::{parse_config, Command, ConfigError, ParseFailure, RunConfig};
pub use output::{CsvTable, RunManifest};

#[derive(Debug, Parser)]
#[command(name = "spindce", version, about = "Dynamical Casimir emission of a spinning spheroid")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (overrides `output_path`; default: current directory).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Optional configuration; only `rtol` and `output_path` are read.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Sampled emission spectrum dGamma/domega.
    Spectrum(RunArgs),
    /// Total and quasi-static emission rate.
    Rate(RunArgs),
    /// Gamma/Gamma_qs over a grid of rotation rates.
    Enhancement(RunArgs),
    /// Rate versus size at the burst-speed limit.
    SweepSize(RunArgs),
    /// Rate versus eccentricity at the burst-speed limit.
    SweepEcc(RunArgs),
    /// Optimal eccentricity at the burst-speed limit.
    Optimize(RunArgs),
    /// Report computed values next to published reference values.
    Validate(ValidateArgs),
}

impl CliCommand {
    fn parts(&self) -> (Command, Option<&Path>, Option<&Path>, Option<usize>) {
        fn run(c: Command, a: &RunArgs) -> (Command, Option<&Path>, Option<&Path>, Option<usize>) {
            (c, Some(a.config.as_path()), a.out.as_deref(), a.workers)
        }
        match self {
            CliCommand::Spectrum(a) => run(Command::Spectrum, a),
            CliCommand::Rate(a) => run(Command::Rate, a),
            CliCommand::Enhancement(a) => run(Command::Enhancement, a),
            CliCommand::SweepSize(a) => run(Command::SweepSize, a),
            CliCommand::SweepEcc(a) => run(Command::SweepEcc, a),
            CliCommand::Optimize(a) => run(Command::Optimize, a),
            CliCommand::Validate(a) => (
                Command::Validate,
                a.config.as_deref(),
                a.out.as_deref(),
                a.workers,
            ),
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(ConfigError),
    Io { path: PathBuf, message: String },
    Catalog(CatalogError),
    Physics(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Config(ConfigError::Parse { .. }) => 3,
            CliError::Config(ConfigError::Schema { .. }) => 4,
            CliError::Config(ConfigError::UnknownMaterial { .. }) => 5,
            CliError::Io { .. } => 6,
            CliError::Catalog(_) => 7,
            CliError::Config(ConfigError::Invalid { error, .. }) | CliError::Physics(error) => match error {
                Error::InvalidArgument(_) => 8,
                Error::OutOfDomain(_) => 9,
                Error::LosslessResonanceCrossing { .. } => 10,
                Error::NonConvergence { .. } => 11,
                Error::FitFailure(_) => 12,
                Error::DegenerateObjective(_) => 13,
                Error::MissingMechanicalData(_) => 14,
                Error::CalibrationFailure(_) | Error::NonHermitian(_) => 15,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Config(e) => e.fmt(f),
            CliError::Io { path, message } => write!(f, "{}: {message}", path.display()),
            CliError::Catalog(e) => e.fmt(f),
            CliError::Physics(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Physics(e)
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Parse (if given) the configuration for `command`.
pub fn load_config(
    command: Command,
    path: Option<&Path>,
    catalog: &MaterialCatalog,
) -> Result<RunConfig, CliError> {
    let Some(path) = path else {
        return Ok(RunConfig::bare(command));
    };
    parse_config(path, command, catalog).map_err(|f| match f {
        ParseFailure::Io { path, source } => CliError::Io {
            path,
            message: source,
        },
        ParseFailure::Config(c) => CliError::Config(c),
    })
}

/// Execute `cfg`, write its outputs into `out_dir` and return the manifest.
pub fn run_config(cfg: &RunConfig, out_dir: &Path) -> Result<(RunManifest, String), CliError> {
    let output = execute(cfg)?;
    std::fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;
    let mut files = Vec::with_capacity(output.tables.len());
    for table in &output.tables {
        table.write_to(out_dir).map_err(|e| io_error(out_dir, e))?;
        files.push(table.file_name.clone());
    }
    let manifest = RunManifest::new(
        cfg.command.name(),
        cfg.config_hash(),
        cfg.canonical_json(),
        files,
        cfg.spin.and_then(|s| s.conversion_note()),
        output.summary,
    );
    manifest.write_to(out_dir).map_err(|e| io_error(out_dir, e))?;
    Ok((manifest, output.message))
}

fn run_parsed(cli: &Cli) -> Result<String, CliError> {
    let (command, config_path, out, workers) = cli.command.parts();
    let catalog = MaterialCatalog::from_env().map_err(CliError::Catalog)?;
    let cfg = load_config(command, config_path, &catalog)?;
    let out_dir = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.output_path.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let go = || run_config(&cfg, &out_dir);
    let (manifest, message) = match workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?
            .install(go)?,
        None => go()?,
    };
    Ok(format!(
        "{message}\nwrote {} and {} to {} (config_hash {})",
        manifest.output_files.join(", "),
        RunManifest::FILE_NAME,
        out_dir.display(),
        manifest.config_hash
    ))
}

/// Entry point shared by the binary and tests.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run_parsed(&cli) {
        Ok(message) => {
            println!("{message}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("spindce: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
