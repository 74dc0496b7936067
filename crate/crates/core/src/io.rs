//! Shared helpers for the versioned JSON file formats.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Parses JSON, reporting failures with the source path and line.
pub fn parse_json<T: DeserializeOwned>(text: &str, path: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Schema {
        path: path.to_string(),
        message: format!("line {} column {}: {e}", e.line(), e.column()),
    })
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    parse_json(&text, &path.display().to_string())
}

/// Rejects files whose declared schema version is not the supported one.
pub fn check_version(found: Option<u32>, path: &str) -> Result<()> {
    match found {
        None | Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(Error::Schema {
            path: path.to_string(),
            message: format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}"),
        }),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// Writes `contents` to `path` via a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}
