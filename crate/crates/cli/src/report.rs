//! Machine-readable results. Every value is a string so that big integers and
//! high-precision midpoints survive any JSON reader unchanged.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use overcubic::analytic::Ball;
use rug::float::Round;
use serde_json::{json, Value};

use crate::config::OutputFormat;

/// Digits after the decimal point used for every interval midpoint.
pub const DECIMALS: usize = 12;

pub type Row = BTreeMap<String, String>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub kind: String,
    pub params: Row,
    pub findings: Vec<Row>,
    pub verified_range: Option<(u64, u64)>,
    /// Whether every check in the report passed; drives the exit code.
    pub ok: bool,
}

impl Report {
    pub fn new(kind: &str) -> Self {
        Report {
            kind: kind.to_string(),
            ok: true,
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "params": self.params,
            "findings": self.findings,
            "verified_range": self.verified_range.map(|(a, b)| [a.to_string(), b.to_string()]),
            "ok": self.ok,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Text => self.to_text(),
        }
    }

    fn to_csv(&self) -> String {
        let mut columns: Vec<&String> = Vec::new();
        for row in &self.findings {
            for k in row.keys() {
                if !columns.contains(&k) {
                    columns.push(k);
                }
            }
        }
        let mut out = String::new();
        let header: Vec<String> = columns.iter().map(|c| csv_field(c)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.findings {
            let cells: Vec<String> = columns
                .iter()
                .map(|c| csv_field(row.get(*c).map_or("", String::as_str)))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.kind).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "  {k} = {v}").unwrap();
        }
        for row in &self.findings {
            let cells: Vec<String> = row.iter().map(|(k, v)| format!("{k}={v}")).collect();
            writeln!(out, "- {}", cells.join(" ")).unwrap();
        }
        if let Some((a, b)) = self.verified_range {
            writeln!(out, "verified range: {a}..={b}").unwrap();
        }
        writeln!(out, "ok: {}", if self.ok { "yes" } else { "no" }).unwrap();
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Radius as a short upward-rounded decimal.
pub fn radius(b: &Ball) -> String {
    b.rad().to_string_radix_round(10, Some(3), Round::Up)
}

/// Insert `<key>` (midpoint) and `<key>_radius` for a ball.
pub fn put_ball(row: &mut Row, key: &str, b: &Ball) {
    row.insert(key.to_string(), b.to_fixed(DECIMALS));
    row.insert(format!("{key}_radius"), radius(b));
}

pub fn row<const N: usize>(pairs: [(&str, String); N]) -> Row {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
