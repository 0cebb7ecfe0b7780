//! Command-line front end: spectra, rate scans, ratio curves and the
//! verification batteries.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Write};
use std::time::Instant;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod grid;
pub mod manifest;
pub mod output;

use args::{Cli, Command};
use commands::{cmd_ratio, cmd_scan, cmd_spectrum, cmd_verify, emit, params, profile_params, CliError};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_io(argv, &mut io::stdout().lock(), &mut io::stderr().lock())
}

/// Parse `argv`, run the command and return the process exit code.
pub fn run_with_io<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{text}");
            return EXIT_OK;
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    match cli.workers {
        Some(0) => {
            let _ = writeln!(err, "error: --workers must be at least 1");
            return EXIT_USAGE;
        }
        Some(n) => builder = builder.num_threads(n),
        None => {}
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_NUMERIC;
        }
    };
    let start = Instant::now();
    let outcome = pool.install(|| compute(&cli.command));
    log::info!("finished in {:.3} s", start.elapsed().as_secs_f64());
    match outcome.and_then(|o| deliver(o, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

enum Outcome<'a> {
    Table {
        table: output::Table,
        command: &'static str,
        parameters: BTreeMap<String, serde_json::Value>,
        output: &'a args::OutputArgs,
    },
    Report(commands::VerifyReport),
}

fn deliver(o: Outcome<'_>, out: &mut dyn Write) -> Result<i32, CliError> {
    match o {
        Outcome::Table { table, command, parameters, output } => {
            emit(&table, command, parameters, output, out)?;
            Ok(EXIT_OK)
        }
        Outcome::Report(r) => {
            write!(out, "{}", r.render())?;
            Ok(if r.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    }
}

fn compute(cmd: &Command) -> Result<Outcome<'_>, CliError> {
    Ok(match cmd {
        Command::Spectrum(a) => {
            let t = cmd_spectrum(a)?;
            let p = params(serde_json::json!({
                "mirror": format!("{:?}", a.mirror).to_lowercase(),
                "mu": a.mu,
                "lambda": a.lambda,
                "profile": profile_params(&a.profile),
                "points": a.points,
                "xi_max": a.xi_max,
                "mode": format!("{:?}", a.mode).to_lowercase(),
                "raw": a.raw,
            }));
            Outcome::Table { table: t, command: "spectrum", parameters: p, output: &a.output }
        }
        Command::Scan(a) => {
            let t = cmd_scan(a)?;
            let p = params(serde_json::json!({
                "mu_grid": a.mu_grid.to_string(),
                "lambda_grid": a.lambda_grid.to_string(),
                "profile": profile_params(&a.profile),
            }));
            Outcome::Table { table: t, command: "scan", parameters: p, output: &a.output }
        }
        Command::Ratio(a) => {
            let t = cmd_ratio(a)?;
            let p = params(serde_json::json!({
                "lambda_list": a.lambda_list,
                "mu_grid": a.mu_grid.to_string(),
                "profile": profile_params(&a.profile),
            }));
            Outcome::Table { table: t, command: "ratio", parameters: p, output: &a.output }
        }
        Command::Verify(a) => Outcome::Report(cmd_verify(a)?),
    })
}
