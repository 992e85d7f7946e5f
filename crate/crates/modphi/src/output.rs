//! CSV and JSON writers for tabular results.
//!
//! Both formats open with the tool version and the run configuration, carry
//! no timestamps, and print reals with 17 significant digits, so identical
//! inputs give identical bytes.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    /// An exact integer or rational already rendered as `"p"` or `"p/q"`.
    Exact(String),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Exact(s) | Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Real(v) if v.is_finite() => {
                // Parse the 17-digit rendering back so CSV and JSON agree digit for digit.
                let r: f64 = fmt_real(*v).parse().unwrap_or(*v);
                Value::from(r)
            }
            Cell::Real(v) => Value::from(fmt_real(*v)),
            Cell::Exact(s) | Cell::Text(s) => Value::from(s.clone()),
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// `v` in scientific notation with 17 significant digits; `inf`, `-inf`, `nan` otherwise.
pub fn fmt_real(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{v:.16e}")
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// One line identifying the producer and its configuration.
pub fn header_line(config: &Value) -> String {
    format!("# modphi {VERSION} {config}")
}

pub fn write_csv<W: Write>(out: W, config: &Value, table: &Table) -> anyhow::Result<()> {
    let mut out = out;
    writeln!(out, "{}", header_line(config))?;
    let mut w = csv::WriterBuilder::new().from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonDoc<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a Value,
    columns: &'a [String],
    rows: Vec<Vec<Value>>,
}

pub fn write_json<W: Write>(mut out: W, config: &Value, table: &Table) -> anyhow::Result<()> {
    let doc = JsonDoc {
        tool: "modphi",
        version: VERSION,
        config,
        columns: &table.columns,
        rows: table.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect(),
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_table<W: Write>(out: W, format: Format, config: &Value, table: &Table) -> anyhow::Result<()> {
    match format {
        Format::Csv => write_csv(out, config, table),
        Format::Json => write_json(out, config, table),
    }
}
