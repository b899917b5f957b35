// Copyright 2026 The blockade Authors
// SPDX-License-Identifier: Apache-2.0

//! Rectangular numeric tables and their CSV form.
//!
//! ```text
//! # engine = both
//! # base.kappa = 40
//! delta_both,g2_ccw,error
//! -1.2000000000000000e2,9.8281658828587862e-1,0.0000000000000000e0
//! ```
//!
//! Metadata lines come first, sorted by key, each `# key = value` with
//! backslashes and newlines in the value escaped. Numbers are written with
//! 17 significant digits so parsing restores them bit for bit.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: BTreeMap<String, String>,
}

impl ResultTable {
    pub fn new(columns: Vec<String>, metadata: BTreeMap<String, String>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            metadata,
        }
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::MalformedTable(format!(
                "row has {} values for {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// Equality with NaN cells compared by bit pattern.
    pub fn same_as(&self, other: &Self) -> bool {
        self.columns == other.columns
            && self.metadata == other.metadata
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                a.iter()
                    .zip(b)
                    .all(|(x, y)| x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()))
            })
    }

    pub fn emit<W: Write>(&self, mut out: W) -> Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k} = {}", escape(v))?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| format!("{v:.16e}")))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.emit(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::MalformedTable(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut metadata = BTreeMap::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            let Some(entry) = line.strip_prefix('#') else {
                break;
            };
            body_start += line.len();
            let entry = entry.trim_end_matches(['\n', '\r']);
            let entry = entry.strip_prefix(' ').unwrap_or(entry);
            let (k, v) = entry
                .split_once(" = ")
                .ok_or_else(|| Error::MalformedTable(format!("bad metadata line '{entry}'")))?;
            metadata.insert(k.to_string(), unescape(v));
        }

        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(&text.as_bytes()[body_start..]);
        let columns: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        if columns.is_empty() || columns.iter().all(String::is_empty) {
            return Err(Error::MalformedTable("missing header row".into()));
        }
        let mut table = Self::new(columns, metadata);
        for record in reader.records() {
            let record = record?;
            let row = record
                .iter()
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::MalformedTable(format!("not a number: '{cell}'")))
                })
                .collect::<Result<Vec<f64>>>()?;
            table.push_row(row)?;
        }
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut text = String::new();
        File::open(path)?.read_to_string(&mut text)?;
        Self::parse(&text)
    }
}

/// Writes `table` to `path` as CSV, replacing any existing file.
pub fn emit_csv(table: &ResultTable, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    table.emit(&mut out)?;
    out.flush()?;
    Ok(())
}

fn escape(v: &str) -> String {
    v.replace('\\', "\\\\")
        .replace('\n', "\\n")
        .replace('\r', "\\r")
}

fn unescape(v: &str) -> String {
    let mut out = String::with_capacity(v.len());
    let mut chars = v.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => out.push('\\'),
        }
    }
    out
}
