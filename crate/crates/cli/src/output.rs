//! Table assembly and rendering shared by every subcommand. Output is
//! buffered and written once so interrupted runs never leave partial files.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

#[derive(Copy, Clone, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One table cell. Floats render with 15 significant digits and a '.'
/// decimal separator in CSV, and as native numbers in JSON.
pub enum Cell {
    Str(String),
    UInt(u64),
    Float(f64),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => s.clone(),
            Cell::UInt(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.14e}"),
            Cell::Bool(v) => v.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Str(s) => serde_json::Value::from(s.as_str()),
            Cell::UInt(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Bool(v) => serde_json::Value::from(*v),
        }
    }
}

pub struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut text = self.columns.join(",");
                text.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
                text
            }
            OutputFormat::Json => {
                let rows: Vec<Vec<serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| row.iter().map(Cell::json).collect())
                    .collect();
                let doc = serde_json::json!({
                    "columns": self.columns,
                    "rows": rows,
                });
                let mut text =
                    serde_json::to_string_pretty(&doc).expect("tables always serialize");
                text.push('\n');
                text
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
