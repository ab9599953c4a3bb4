//! Output plumbing: JSON documents, CSV tables, stdout-or-file sinks.
//! Given the same resolved config the bytes are identical run to run; the
//! only exception is the JSON timestamp, removable with --no-timestamp.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::CliError;

#[derive(Serialize)]
pub struct Meta {
    pub command: String,
    pub config: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
}

impl Meta {
    pub fn new(command: &str, config: BTreeMap<String, String>, no_timestamp: bool) -> Self {
        let generated_at_unix = if no_timestamp {
            None
        } else {
            Some(
                SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            )
        };
        Self {
            command: command.to_string(),
            config,
            generated_at_unix,
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(doc)
        .map_err(|e| CliError::Internal(format!("JSON encoding failed: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::Writer::from_writer(Vec::new())
}

pub fn csv_err(e: csv::Error) -> CliError {
    CliError::Internal(format!("CSV encoding failed: {e}"))
}

pub fn csv_finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(format!("CSV encoding failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(format!("CSV not UTF-8: {e}")))
}

pub fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => std::fs::write(path, content).map_err(|e| {
            CliError::Validation(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
