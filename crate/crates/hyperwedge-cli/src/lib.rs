//! Command-line harness for `hyperwedge`: single-point evaluation, transform
//! verification, grid sweeps and named verification suites.
//!
//! Exit status: 0 on success, 1 when a verification contract fails, 2 on usage or
//! parse errors, 3 when a numerical routine fails.

pub mod commands;
pub mod config;
pub mod error;
pub mod parse;
pub mod record;
pub mod suites;

use clap::Parser;
use config::{assemble, Cli, FileConfig, Tolerances};
use error::CliError;
use std::ffi::OsString;
use std::io::Write;

/// Exit status when a verification contract fails.
pub const EXIT_CONTRACT: i32 = 1;

/// Parses `args`, runs the command and writes records; returns the exit status.
pub fn run<I, T, E>(args: I, env: E, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    E: IntoIterator<Item = (String, String)>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = write!(stderr, "{e}");
            return 2;
        }
        Err(e) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match run_cli(&cli, env, stdout) {
        Ok(true) => 0,
        Ok(false) => EXIT_CONTRACT,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn run_cli<E: IntoIterator<Item = (String, String)>>(cli: &Cli, env: E, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            Some(FileConfig::parse(&text)?)
        }
        None => None,
    };
    let cfg = assemble(cli, file, Tolerances::from_env(env)?)?;
    let outcome = commands::execute(&cfg)?;
    match &cfg.output.path {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
            record::write_records(&mut f, &outcome.records, cfg.output.format)?;
            f.flush()?;
        }
        None => record::write_records(stdout, &outcome.records, cfg.output.format)?,
    }
    Ok(outcome.contract_ok)
}
