use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::args::OutputFormat;
use crate::error::CliError;

#[derive(Debug, Clone)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Six significant digits.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(x) => sig6(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn full(&self) -> String {
        match self {
            Cell::Num(x) => x.to_string(),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

/// Headers carry their SI unit, e.g. `omega [rad/s]`.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// Result of a subcommand: a JSON document, a plot-ready table and
/// free-form notes shown in text mode.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Map<String, Value>,
    pub table: Table,
    pub notes: Vec<(String, String)>,
    /// Set when the computation finished without a physical solution; the
    /// report is still written and the process exits with status 1.
    pub failure: Option<String>,
}

impl Report {
    pub fn new(command: &str, table: Table) -> Self {
        let mut json = Map::new();
        json.insert("command".into(), Value::from(command));
        Report {
            json,
            table,
            notes: Vec::new(),
            failure: None,
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Into<Value>) {
        self.json.insert(key.into(), value.into());
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.push((key.into(), value.into()));
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Text => Ok(self.render_text()),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::Usage(e.to_string()))?;
                s.push('\n');
                Ok(s)
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self.notes.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if !self.table.headers.is_empty() {
            if !self.notes.is_empty() {
                out.push('\n');
            }
            let cells: Vec<Vec<String>> = self.table.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
            let widths: Vec<usize> = (0..self.table.headers.len())
                .map(|c| {
                    cells
                        .iter()
                        .map(|r| r[c].chars().count())
                        .chain([self.table.headers[c].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[String]| {
                row.iter()
                    .zip(&widths)
                    .map(|(s, &w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "{}", line(&self.table.headers));
            for r in &cells {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        out
    }

    fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Usage(e.to_string());
        w.write_record(&self.table.headers).map_err(io)?;
        for r in &self.table.rows {
            w.write_record(r.iter().map(Cell::full)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
