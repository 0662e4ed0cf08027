//! Every command produces one JSON document and one CSV table holding the
//! same values. All numbers are strings: exact rationals as `p/q`, floats as
//! decimal text.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use polyint::BigComplex;
use serde_json::Value;

use crate::args::Format;

#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug)]
pub struct Output {
    pub json: Value,
    pub table: Table,
}

/// Shortest round-tripping decimal form of an `f64`.
pub fn num(v: f64) -> String {
    format!("{v:e}")
}

/// `(re, im)` as decimal strings at the number's own precision.
pub fn complex(z: &BigComplex) -> (String, String) {
    z.to_decimal_strings()
}

pub fn write(output: &Output, format: Format, path: Option<&Path>) -> io::Result<()> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, &output.json)?;
            writeln!(sink)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            w.write_record(&output.table.header)?;
            for row in &output.table.rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    sink.flush()
}
