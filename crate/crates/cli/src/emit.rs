//! Output assembly: canonical JSON (sorted keys, compact) and
//! fixed-column CSV.
//!
//! JSON objects are built on `serde_json::Map`, which is ordered by key,
//! and serialized compactly, so identical inputs always produce identical
//! bytes. The CSV layout is one fixed header for every subcommand:
//!
//! `q,n,ell,m,count,type1,type2,N0,N1,N2,predicted,exponent_num,exponent_den,verdict`
//!
//! Cells that do not apply to a subcommand are left empty.

use clap::ValueEnum;
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (expected json or csv)")),
        }
    }
}

pub const CSV_HEADER: &str =
    "q,n,ell,m,count,type1,type2,N0,N1,N2,predicted,exponent_num,exponent_den,verdict";

/// One CSV row; `None` cells print as empty.
#[derive(Debug, Clone, Default)]
pub struct CsvRow {
    pub q: Option<u64>,
    pub n: Option<u32>,
    pub ell: Option<u64>,
    pub m: Option<u32>,
    pub count: Option<u128>,
    pub type1: Option<u64>,
    pub type2: Option<u64>,
    pub n0: Option<u64>,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub predicted: Option<u128>,
    pub exponent_num: Option<u32>,
    pub exponent_den: Option<u32>,
    pub verdict: Option<&'static str>,
}

impl CsvRow {
    fn line(&self) -> String {
        fn cell<T: std::fmt::Display>(v: &Option<T>) -> String {
            v.as_ref().map(|x| x.to_string()).unwrap_or_default()
        }
        [
            cell(&self.q),
            cell(&self.n),
            cell(&self.ell),
            cell(&self.m),
            cell(&self.count),
            cell(&self.type1),
            cell(&self.type2),
            cell(&self.n0),
            cell(&self.n1),
            cell(&self.n2),
            cell(&self.predicted),
            cell(&self.exponent_num),
            cell(&self.exponent_den),
            cell(&self.verdict),
        ]
        .join(",")
    }
}

/// A subcommand's result in both shapes.
pub struct Output {
    pub json: Value,
    pub rows: Vec<CsvRow>,
}

pub fn to_bytes(format: Format, output: &Output) -> Vec<u8> {
    let mut text = match format {
        Format::Json => serde_json::to_string(&output.json).expect("JSON serialization"),
        Format::Csv => {
            let mut lines = vec![CSV_HEADER.to_string()];
            lines.extend(output.rows.iter().map(CsvRow::line));
            lines.join("\n")
        }
    };
    text.push('\n');
    text.into_bytes()
}

/// Exact integers only: values outside the 64-bit JSON-number range are
/// rejected rather than rounded.
pub fn ju(v: u128) -> Result<Value, CliError> {
    u64::try_from(v)
        .map(Value::from)
        .map_err(|_| CliError::Validation("count exceeds the 64-bit output range".into()))
}

pub fn ji(v: i128) -> Result<Value, CliError> {
    i64::try_from(v)
        .map(Value::from)
        .map_err(|_| CliError::Validation("value exceeds the 64-bit output range".into()))
}
