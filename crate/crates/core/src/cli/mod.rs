//! Command-line driver: `forward`, `invert`, `roundtrip`, `solitary` and
//! `spectrum`.
//!
//! Settings come from a JSON config file (`--config`, or the path in
//! `CHSCATTER_CONFIG`) with flags layered on top. Profiles are written as
//! `coord,value` CSV; when `--output` is given a `.plot.csv` copy and, where
//! the command has one, a `.diagnostics.json` file are written beside it.
//! Reports go to `--output` or stdout.
//!
//! Exit codes: 0 success, 2 input or validation error, 3 domain or range
//! error, 4 solver failure.

pub mod commands;
pub mod config;
pub mod csv;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use commands::{
    cmd_forward, cmd_invert, cmd_roundtrip, cmd_solitary, cmd_spectrum, Output, SpectrumSource,
};
use config::{Method, RunConfig, CONFIG_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } | CliError::Config(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::Domain { .. }
                | Error::Range { .. }
                | Error::Admissible { .. }
                | Error::NonPositiveJost { .. } => EXIT_DOMAIN,
                Error::NonConvergence { .. }
                | Error::Blowup { .. }
                | Error::Normalization { .. } => EXIT_SOLVER,
                _ => EXIT_INPUT,
            },
        }
    }
}

/// Accepts a decimal or a fraction such as `8/3`.
pub fn parse_speed(s: &str) -> Result<f64, String> {
    let value = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n
                .trim()
                .parse()
                .map_err(|_| format!("`{n}` is not a number"))?;
            let d: f64 = d
                .trim()
                .parse()
                .map_err(|_| format!("`{d}` is not a number"))?;
            n / d
        }
        None => s
            .trim()
            .parse()
            .map_err(|_| format!("`{s}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "chscatter",
    version,
    about = "Camassa-Holm forward and inverse scattering at the threshold spectral value"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Momentum profile CSV to potential CSV.
    Forward { input: PathBuf },
    /// Potential CSV to momentum profile CSV plus diagnostics.
    Invert { input: PathBuf },
    /// Forward then inverse; reports the sup error as JSON.
    Roundtrip { input: PathBuf },
    /// Solitary-wave profile for a given speed, with a residual report.
    Solitary {
        #[arg(long, value_parser = parse_speed, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y0: f64,
    },
    /// Eigenvalues of a potential CSV or of the solitary well for `--c`.
    Spectrum {
        #[arg(required_unless_present = "c")]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_speed, conflicts_with = "input", allow_negative_numbers = true)]
        c: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        y0: f64,
    },
}

#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// JSON config file; defaults to $CHSCATTER_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Left end of the x-grid.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    /// Right end of the x-grid.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    /// x spacing.
    #[arg(long, global = true)]
    pub dx: Option<f64>,
    /// Left end of the y-grid.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub ymin: Option<f64>,
    /// Right end of the y-grid.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub ymax: Option<f64>,
    /// y spacing.
    #[arg(long, global = true)]
    pub dy: Option<f64>,
    /// Jost solver.
    #[arg(long, global = true, value_enum)]
    pub method: Option<Method>,
    /// Volterra tolerance, or bisection tolerance for `spectrum`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Maximum Picard sweeps for the Volterra solver.
    #[arg(long, global = true)]
    pub max_iter: Option<usize>,
    /// Largest boundary magnitude accepted for input profiles.
    #[arg(long, global = true)]
    pub decay_tol: Option<f64>,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

impl Overrides {
    fn apply(&self, cfg: &mut RunConfig, spectrum: bool) {
        macro_rules! set {
            ($($field:ident),*) => { $( if let Some(v) = self.$field { cfg.$field = Some(v); } )* };
        }
        set!(xmin, xmax, dx, ymin, ymax, dy, method);
        if let Some(t) = self.tol {
            if spectrum {
                cfg.spectrum_tol = t;
            } else {
                cfg.volterra_tol = t;
            }
        }
        if let Some(n) = self.max_iter {
            cfg.max_iter = n;
        }
        if let Some(t) = self.decay_tol {
            cfg.decay_tol = t;
        }
        if let Some(p) = &self.output {
            cfg.output = Some(p.clone());
        }
    }
}

/// Config file (if any) with flag overrides applied and validated.
pub fn resolve_config(overrides: &Overrides, spectrum: bool) -> Result<RunConfig, CliError> {
    let path = overrides.config.clone().or_else(|| {
        std::env::var_os(CONFIG_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    });
    let mut cfg = match path {
        Some(p) => RunConfig::load(&p)?,
        None => RunConfig::default(),
    };
    overrides.apply(&mut cfg, spectrum);
    cfg.validate()?;
    Ok(cfg)
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let cfg = resolve_config(
        &cli.overrides,
        matches!(cli.command, Command::Spectrum { .. }),
    )?;
    let output = match &cli.command {
        Command::Forward { input } => cmd_forward(input, &cfg)?,
        Command::Invert { input } => cmd_invert(input, &cfg)?,
        Command::Roundtrip { input } => cmd_roundtrip(input, &cfg)?,
        Command::Solitary { c, y0 } => cmd_solitary(*c, *y0, &cfg)?,
        Command::Spectrum { input, c, y0 } => {
            let source = match (input, c) {
                (Some(p), _) => SpectrumSource::File(p),
                (None, Some(c)) => SpectrumSource::Solitary { c: *c, y0: *y0 },
                (None, None) => unreachable!("clap requires an input file or --c"),
            };
            cmd_spectrum(source, &cfg)?
        }
    };
    emit(&output, cfg.output.as_deref())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn stdout_write(contents: &str) -> Result<(), CliError> {
    io::stdout()
        .lock()
        .write_all(contents.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

/// Writes a command's output. Profiles also get a `.plot.csv` copy and a
/// `.diagnostics.json` file next to `path`; without a path the profile goes
/// to stdout and diagnostics to stderr.
pub fn emit(output: &Output, path: Option<&Path>) -> Result<(), CliError> {
    match (output, path) {
        (Output::Profile { data, diagnostics }, Some(p)) => {
            let text = csv::format_profile(data);
            write_file(p, &text)?;
            write_file(&p.with_extension("plot.csv"), &text)?;
            if let Some(d) = diagnostics {
                write_file(&p.with_extension("diagnostics.json"), &to_json(d))?;
            }
            Ok(())
        }
        (Output::Profile { data, diagnostics }, None) => {
            stdout_write(&csv::format_profile(data))?;
            if let Some(d) = diagnostics {
                eprint!("{}", to_json(d));
            }
            Ok(())
        }
        (Output::Report(v), Some(p)) => write_file(p, &to_json(v)),
        (Output::Report(v), None) => stdout_write(&to_json(v)),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
