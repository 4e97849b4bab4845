//! JSON / CSV emission.

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde_json::Value;

use tomo_entropy::json::{fmt_f64, to_json_string};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Header plus rows of already formatted fields.
pub struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, fields: Vec<String>) {
        debug_assert_eq!(fields.len(), self.header.len());
        self.rows.push(fields);
    }

    pub fn num(x: f64) -> String {
        fmt_f64(x)
    }

    fn render(&self) -> std::io::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }
}

pub struct Output {
    pub json: Value,
    csv: Csv,
    pub code: u8,
}

impl Output {
    pub fn new(json: Value, csv: Csv) -> Self {
        Self { json, csv, code: 0 }
    }

    pub fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<(), String> {
        let bytes = match format {
            Format::Json => {
                let mut s = to_json_string(&self.json);
                s.push('\n');
                s.into_bytes()
            }
            Format::Csv => self.csv.render().map_err(|e| format!("csv: {e}"))?,
        };
        match out {
            Some(path) => std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
            None => std::io::stdout()
                .lock()
                .write_all(&bytes)
                .map_err(|e| format!("stdout: {e}")),
        }
    }
}
