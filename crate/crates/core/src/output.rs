//! Atomic file output.

use std::io::Write;
use std::path::Path;

use crate::error::{McdaError, Result};

/// Writes `bytes` to a temporary file in the target directory and renames it
/// over `path`, so readers never see a partial file.
pub fn write_atomic(path: impl AsRef<Path>, bytes: &[u8]) -> Result<()> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| McdaError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| McdaError::io(path, e))?;
    tmp.persist(path).map_err(|e| McdaError::io(path, e.error))?;
    Ok(())
}
