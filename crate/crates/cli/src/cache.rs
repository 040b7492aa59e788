//! On-disk cache of the table `a(0..=nmax)`.
//!
//! ```text
//! overcubic-table v1 nmax=<N>
//! 0,1
//! 1,2
//! ...
//! sha256,<hex digest of every record line including its newline>
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use overcubic::qseries::PartitionTable;
use rug::Integer;
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

const HEADER: &str = "overcubic-table v1";

fn records(table: &PartitionTable) -> String {
    let mut out = String::new();
    for (n, v) in table.values().iter().enumerate() {
        writeln!(out, "{n},{v}").expect("writing to a String");
    }
    out
}

fn digest(records: &str) -> String {
    Sha256::digest(records.as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            write!(s, "{b:02x}").expect("writing to a String");
            s
        })
}

/// Serialize a table in the cache format.
pub fn encode(table: &PartitionTable) -> String {
    let body = records(table);
    format!("{HEADER} nmax={}\n{body}sha256,{}\n", table.nmax(), digest(&body))
}

/// Parse and verify the cache format.
pub fn decode(text: &str, path: &str) -> Result<PartitionTable> {
    let bad = |reason: String| CliError::Cache {
        path: path.to_string(),
        reason,
    };
    let mut lines = text.split_inclusive('\n');
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let nmax: u64 = header
        .trim_end()
        .strip_prefix(HEADER)
        .and_then(|rest| rest.trim().strip_prefix("nmax="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| bad(format!("unrecognised header {:?}", header.trim_end())))?;

    let mut body = String::new();
    let mut values = Vec::new();
    let mut checksum = None;
    for line in lines {
        if let Some(sum) = line.trim_end().strip_prefix("sha256,") {
            checksum = Some(sum.to_string());
            break;
        }
        let (n, v) = line
            .trim_end()
            .split_once(',')
            .ok_or_else(|| bad(format!("malformed record {:?}", line.trim_end())))?;
        if n.parse::<usize>().ok() != Some(values.len()) {
            return Err(bad(format!("record {:?} out of order", line.trim_end())));
        }
        let v: Integer = v.parse().map_err(|_| bad(format!("bad integer in {:?}", line.trim_end())))?;
        values.push(v);
        body.push_str(line);
    }
    let checksum = checksum.ok_or_else(|| bad("missing checksum line".into()))?;
    if checksum != digest(&body) {
        return Err(bad("checksum mismatch".into()));
    }
    if values.len() as u64 != nmax + 1 {
        return Err(bad(format!("header says nmax={nmax} but {} records follow", values.len())));
    }
    Ok(PartitionTable::from_values(values)?)
}

pub fn write(path: &Path, table: &PartitionTable) -> Result<()> {
    fs::write(path, encode(table)).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read(path: &Path) -> Result<PartitionTable> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode(&text, &path.display().to_string())
}

/// A table covering `0..=nmax`, taken from the cache when it is large enough.
/// Freshly built tables are written back when a cache path is configured.
pub fn load_or_build(path: Option<&Path>, nmax: u64) -> Result<PartitionTable> {
    if let Some(p) = path {
        if p.exists() {
            let cached = read(p)?;
            if cached.nmax() >= nmax {
                return Ok(cached);
            }
        }
    }
    let table = PartitionTable::new(nmax)?;
    if let Some(p) = path {
        write(p, &table)?;
    }
    Ok(table)
}
