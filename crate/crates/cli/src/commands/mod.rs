use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use dce_core::{Error, MotionProfile};
use serde_json::Value;
use thiserror::Error as ThisError;

use crate::args::{OutFormat, OutputArgs, ProfileArgs};
use crate::manifest::{append_manifest, RunManifest};
use crate::output::Table;

pub mod ratio;
pub mod scan;
pub mod spectrum;
pub mod verify;

pub use ratio::cmd_ratio;
pub use scan::cmd_scan;
pub use spectrum::cmd_spectrum;
pub use verify::{cmd_verify, VerifyReport};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(#[from] Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 3,
        }
    }
}

/// Core errors raised while checking user input are usage errors.
pub(crate) fn invalid(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

pub(crate) fn profile(a: &ProfileArgs) -> Result<MotionProfile, CliError> {
    MotionProfile::new(a.eps, a.omega0, a.tau).map_err(invalid)
}

pub(crate) fn profile_params(a: &ProfileArgs) -> Value {
    serde_json::json!({ "omega0": a.omega0, "eps": a.eps, "tau": a.tau })
}

pub(crate) fn params(v: Value) -> BTreeMap<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        other => BTreeMap::from([("value".to_string(), other)]),
    }
}

/// Write `table` to the requested destination; files get a manifest sidecar.
pub(crate) fn emit(
    table: &Table,
    command: &str,
    parameters: BTreeMap<String, Value>,
    out_args: &OutputArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let paths = out_args.output.iter().map(|p| p.display().to_string()).collect();
    let manifest = RunManifest::new(command, parameters, 0, paths);
    match &out_args.output {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_table(table, &manifest, out_args.format, &mut w)?;
            w.flush()?;
            let side = append_manifest(path, &manifest)?;
            log::info!("wrote {} and {}", path.display(), side.display());
        }
        None => write_table(table, &manifest, out_args.format, stdout)?,
    }
    Ok(())
}

fn write_table(table: &Table, m: &RunManifest, format: OutFormat, w: &mut dyn Write) -> Result<(), CliError> {
    match format {
        OutFormat::Csv => table.write_csv(w)?,
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut *w, &table.to_json(m)).map_err(io::Error::other)?;
            writeln!(w)?;
        }
    }
    Ok(())
}
