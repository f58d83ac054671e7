//! The `siegel-norms` command line: identity verification, norm tables,
//! Rayleigh sweeps and SVG plots.
//!
//! Exit codes are `0` on success, `1` when a verification or estimate fails
//! and `2` for usage or configuration errors.

use std::io::Write;

use clap::Parser;

use crate::error::Error;

mod commands;
mod config;
pub mod svg;

pub use commands::{cmd_estimate, cmd_norms, cmd_plot, cmd_scan, cmd_verify, plot_csv};
pub use config::{
    default_p_grid, parse_config_file, parse_p_grid, resolve, CommandKind, Estimator, Flags, RunConfig, Source,
    DEFAULT_SEED, SEED_ENV,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { .. } | Error::DimensionMismatch { .. } | Error::Dispatch(_) | Error::Sampler(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

/// The document a command produced and the checks that failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub bytes: Vec<u8>,
    pub failures: Vec<String>,
}

pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg.command {
        CommandKind::Verify => cmd_verify(cfg),
        CommandKind::Norms => cmd_norms(cfg),
        CommandKind::Estimate => cmd_estimate(cfg),
        CommandKind::Scan => cmd_scan(cfg),
        CommandKind::Plot => cmd_plot(cfg),
    }
}

/// Runs one invocation with an explicit environment seed and output streams.
pub fn run_with<I, T>(args: I, env_seed: Option<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let flags = match Flags::try_parse_from(args) {
        Ok(f) => f,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = resolve(flags, env_seed).and_then(|cfg| {
        let out = execute(&cfg)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, &out.bytes)
                .map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))?,
            None => stdout
                .write_all(&out.bytes)
                .map_err(|e| CliError::Failed(format!("cannot write output: {e}")))?,
        }
        Ok(out.failures)
    });
    match result {
        Ok(failures) if failures.is_empty() => EXIT_OK,
        Ok(failures) => {
            for f in failures {
                let _ = writeln!(stderr, "FAIL {f}");
            }
            EXIT_FAILED
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Failed(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_FAILED
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with(std::env::args_os(), env_seed, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
