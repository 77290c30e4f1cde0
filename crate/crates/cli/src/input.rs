//! File loading and small argument parsers. Every error here is an input error.

use crate::report::RunReport;
use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use std::path::Path;
use toric_gkz::rational::{parse_q_vec, Q};

/// Reads a JSON file, records its digest, and deserializes it.
pub fn load_json<T: DeserializeOwned>(report: &mut RunReport, path: &Path) -> Result<T> {
    let text = load_text(report, path)?;
    serde_json::from_str(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

pub fn load_text(report: &mut RunReport, path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    report.input(&path.display().to_string(), &bytes);
    let text = String::from_utf8(bytes).map_err(|_| anyhow!("{}: not UTF-8", path.display()))?;
    if text.trim().is_empty() {
        bail!("{}: empty input", path.display());
    }
    Ok(text)
}

pub fn rationals(s: &str) -> Result<Vec<Q>> {
    parse_q_vec(s).map_err(|e| anyhow!("cannot parse {s:?}: {e}"))
}

pub fn integers(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| anyhow!("cannot parse {t:?} as an integer")))
        .collect()
}

/// Rows separated by `;`, entries by `,`.
pub fn integer_rows(s: &str) -> Result<Vec<Vec<i64>>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(integers).collect()
}
