use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct FileChecksum {
    pub file: String,
    pub sha256: String,
}

/// Everything needed to replay a run. Wall time lives here and nowhere in
/// the reports, so report files stay byte-identical between runs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub config: RunConfig,
    pub versions: Versions,
    pub wall_time_seconds: f64,
    pub checksums: Vec<FileChecksum>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub zetalab: &'static str,
    pub zetalab_cli: &'static str,
}

impl Versions {
    pub fn current() -> Self {
        Self { zetalab: zetalab::VERSION, zetalab_cli: env!("CARGO_PKG_VERSION") }
    }
}

pub fn sha256_file(path: &Path) -> Result<String, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

pub fn checksums(files: &[std::path::PathBuf]) -> Result<Vec<FileChecksum>, CliError> {
    files
        .iter()
        .map(|p| {
            Ok(FileChecksum {
                file: p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
                sha256: sha256_file(p)?,
            })
        })
        .collect()
}
