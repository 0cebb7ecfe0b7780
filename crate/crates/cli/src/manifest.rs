use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Enough to regenerate an output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub seed: u64,
    pub tool_version: String,
    pub timestamp: String,
    pub output_paths: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>, seed: u64, output_paths: Vec<String>) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            output_paths,
        }
    }
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    output.with_file_name(name)
}

/// Append `m` to the JSON array in the sidecar of `output`.
///
/// Earlier entries are kept; the last one describes the current file.
pub fn append_manifest(output: &Path, m: &RunManifest) -> io::Result<PathBuf> {
    let path = sidecar_path(output);
    let mut entries: Vec<RunManifest> = match fs::read_to_string(&path) {
        Ok(text) => serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?,
        Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
        Err(e) => return Err(e),
    };
    entries.push(m.clone());
    let text = serde_json::to_string_pretty(&entries).map_err(io::Error::other)?;
    fs::write(&path, text + "\n")?;
    Ok(path)
}

/// All manifests recorded for `output`, oldest first.
pub fn read_manifests(output: &Path) -> io::Result<Vec<RunManifest>> {
    let text = fs::read_to_string(sidecar_path(output))?;
    serde_json::from_str(&text).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/a.csv")), PathBuf::from("out/a.csv.manifest.json"));
    }

    #[test]
    fn timestamp_is_rfc3339() {
        let m = RunManifest::new("x", BTreeMap::new(), 7, vec![]);
        assert!(chrono::DateTime::parse_from_rfc3339(&m.timestamp).is_ok());
        assert_eq!(m.seed, 7);
    }
}
