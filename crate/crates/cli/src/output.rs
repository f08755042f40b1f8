//! Result records and atomic file output.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Format};
use crate::experiments::Payload;
use crate::CliError;

pub const BUILD_ID: &str = env!("CUMDEV_BUILD_ID");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// The effective configuration, after command-line overrides.
    pub config: ExperimentConfig,
    pub build_id: String,
    pub timing: Timing,
    pub payload: Payload,
}

/// Header plus one line per row; cells in `{:.16e}`, missing cells empty.
pub fn to_csv(p: &Payload) -> String {
    let mut out = p.columns.join(",");
    out.push('\n');
    for row in &p.rows {
        let cells: Vec<String> = row.iter().map(|c| c.map(|v| format!("{v:.16e}")).unwrap_or_default()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn render(record: &ResultRecord, format: Format) -> String {
    match format {
        Format::Csv => to_csv(&record.payload),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(record).expect("record serializes");
            s.push('\n');
            s
        }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so the target never holds a partial result.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}
