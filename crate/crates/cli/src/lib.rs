//! The `chardeg` command line: subcommand dispatch, output formats, layered
//! configuration and the on-disk degree cache.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 a cap or
//! budget was exceeded. Data goes to `out` only; diagnostics go to `err`
//! and the log.

pub mod args;
pub mod cache;
mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::collections::HashMap;
use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
use config::Settings;
pub use error::{CliError, EXIT_CHECK_FAILED, EXIT_INVALID_INPUT, EXIT_LIMIT, EXIT_OK};

/// Runs with the process environment.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env: HashMap<String, String> = std::env::vars().collect();
    run_with_env(argv, &env, out, err)
}

/// Runs with an explicit environment, which is consulted only for the
/// `CHARDEG_*` settings and `HOME`.
pub fn run_with_env<I, T>(argv: I, env: &HashMap<String, String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => EXIT_INVALID_INPUT,
            };
        }
    };
    init_logging(cli.global.verbose);
    match dispatch(&cli, env, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .target(env_logger::Target::Stderr)
        .try_init();
}

fn dispatch(cli: &Cli, env: &HashMap<String, String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let (oracle_cap, budget) = match &cli.command {
        Command::Verify { oracle_cap, budget, .. } => (*oracle_cap, *budget),
        Command::Enumerate { order_cap, budget, .. } => (*order_cap, *budget),
        _ => (None, None),
    };
    let s = Settings::resolve(&cli.global, oracle_cap, budget, env)?;
    let started = std::time::Instant::now();
    let (rendered, code) = match &cli.command {
        Command::Gvalue { degree, no_verify } => commands::gvalue(*degree, !no_verify, &s),
        Command::ScanA { max_p } => commands::scan_a(*max_p),
        Command::ScanB { max_p } => commands::scan_b(*max_p),
        Command::Kanold { max_p } => commands::kanold(*max_p),
        Command::Degrees { spec } => commands::degrees(spec, &s, err),
        Command::Witness { degree } => commands::witness(*degree, &s),
        Command::Verify { degree, .. } => commands::verify(*degree, &s),
        Command::Enumerate { order, .. } => commands::enumerate(*order, s.oracle_cap, &s),
        Command::Cache { clear, .. } => commands::cache(*clear, &s, err),
    }?;
    log::info!("finished in {:.3?}", started.elapsed());
    let timestamp = s
        .timestamp
        .then(|| chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    out.write_all(rendered.render(s.format, timestamp.as_deref())?.as_bytes())?;
    out.flush()?;
    Ok(code)
}
