//! Flat `key = value` run files. Keys are long flag names without the dashes.

use std::ffi::OsString;
use std::path::Path;

use super::CliError;

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || key.starts_with('-') || key == "config" {
            return Err(CliError::Config(format!(
                "line {}: invalid key `{key}`",
                lineno + 1
            )));
        }
        entries.push((key.to_string(), value.to_string()));
    }
    Ok(entries)
}

pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text)
}

/// Turns file entries into command-line tokens; boolean `true` becomes a bare flag.
pub fn to_tokens(entries: &[(String, String)]) -> Vec<OsString> {
    let mut tokens = Vec::with_capacity(entries.len() * 2);
    for (key, value) in entries {
        match value.as_str() {
            "true" => tokens.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                tokens.push(format!("--{key}").into());
                tokens.push(value.into());
            }
        }
    }
    tokens
}
