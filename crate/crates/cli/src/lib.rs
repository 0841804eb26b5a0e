//! Command-line harness over `phmf-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod oracle;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::report::{all_pass, error_line, json_line};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

pub const THREADS_ENV: &str = "PHMF_THREADS";

/// Thread count from the environment value, the flag, or the machine, in that order.
pub fn resolve_threads(env: Option<&str>, flag: Option<usize>) -> Result<usize, String> {
    let n = match (env, flag) {
        (Some(v), _) => v.trim().parse::<usize>().map_err(|_| format!("{THREADS_ENV}={v:?} is not a positive integer"))?,
        (None, Some(n)) => n,
        (None, None) => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if n == 0 {
        return Err("thread count must be positive".into());
    }
    Ok(n)
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn run<I, T>(argv: I, env_threads: Option<&str>, out: &mut (dyn Write + Send)) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => return config_error(out, e.to_string().trim()),
    };
    let threads = match resolve_threads(env_threads, cli.threads) {
        Ok(n) => n,
        Err(msg) => return config_error(out, &msg),
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => return config_error(out, &e.to_string()),
    };
    pool.install(|| dispatch(&cli.command, out))
}

fn config_error(out: &mut dyn Write, msg: &str) -> i32 {
    let _ = error_line(out, msg);
    EXIT_CONFIG
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, r: phmf_core::Result<T>) -> i32 {
    match r {
        Ok(v) => match json_line(out, &v) {
            Ok(()) => EXIT_OK,
            Err(e) => config_error(out, &e.to_string()),
        },
        Err(e) => config_error(out, &e.to_string()),
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> i32 {
    match cmd {
        Command::Verify { suite } => {
            let checks = verify::run_suite(*suite);
            for c in &checks {
                if json_line(out, c).is_err() {
                    return EXIT_CONFIG;
                }
            }
            if all_pass(&checks) {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Command::Trace(a) => emit(out, commands::run_trace(a)),
        Command::Coeff(a) => emit(out, commands::run_coeff(a)),
        Command::Classes(a) => emit(out, commands::run_classes(a)),
        Command::Genfun(a) => match commands::run_genfun(a) {
            Ok(rows) => match commands::write_genfun(out, &rows, a.format) {
                Ok(()) => EXIT_OK,
                Err(e) => config_error(out, &e.to_string()),
            },
            Err(e) => config_error(out, &e.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_precedence() {
        assert_eq!(resolve_threads(Some("3"), Some(8)), Ok(3));
        assert_eq!(resolve_threads(None, Some(8)), Ok(8));
        assert!(resolve_threads(None, None).unwrap() >= 1);
        assert!(resolve_threads(Some("x"), None).is_err());
        assert!(resolve_threads(None, Some(0)).is_err());
    }
}
