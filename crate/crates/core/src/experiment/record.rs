use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// First line of every results CSV.
pub const CSV_VERSION_LINE: &str = "# gsparc-sim-csv v1";

/// One Monte-Carlo result row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRecord {
    pub mode: String,
    pub scheme: String,
    pub dict: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub decoder: String,
    /// PMAD path count; 1 for the other decoders.
    #[serde(rename = "T")]
    pub t: usize,
    pub ebn0_db: f64,
    pub trials: u64,
    /// Block errors (any user or receiver in error for multi-user modes).
    pub errors: u64,
    pub bler: f64,
    pub seed: u64,
    pub digest: String,
    pub max_trials: u64,
    pub max_errors: u64,
    /// Per user (MAC) or per receiver, `;`-separated; empty for one user.
    pub per_user_errors: String,
}

impl SimRecord {
    pub fn per_user(&self) -> Vec<u64> {
        self.per_user_errors
            .split(';')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().unwrap_or(0))
            .collect()
    }
}

pub(crate) fn join_counts(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

/// Appends records to `path`, writing the version line and header when the
/// file is new. An existing file must carry the same version line.
pub fn append_csv(path: &Path, records: &[SimRecord]) -> Result<()> {
    let exists = path.exists() && std::fs::metadata(path).map(|m| m.len() > 0).unwrap_or(false);
    if exists {
        let mut first = String::new();
        let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        BufReader::new(f).read_line(&mut first).map_err(|e| Error::io(path, e))?;
        if first.trim_end() != CSV_VERSION_LINE {
            return Err(Error::Format(format!(
                "{} does not start with '{CSV_VERSION_LINE}'",
                path.display()
            )));
        }
    }
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::io(path, e))?;
    if !exists {
        writeln!(file, "{CSV_VERSION_LINE}").map_err(|e| Error::io(path, e))?;
    }
    let mut w = csv::WriterBuilder::new().has_headers(!exists).from_writer(file);
    for r in records {
        w.serialize(r).map_err(|e| Error::Format(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads every record of a results CSV.
pub fn read_csv(path: &Path) -> Result<Vec<SimRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let body = text
        .strip_prefix(CSV_VERSION_LINE)
        .ok_or_else(|| Error::Format(format!("{} has no version line", path.display())))?;
    csv::Reader::from_reader(body.trim_start_matches(['\r', '\n']).as_bytes())
        .deserialize()
        .map(|r| r.map_err(|e| Error::Format(e.to_string())))
        .collect()
}
