//! Tabular output as CSV or JSON with a fixed number of significant digits.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Format,
    pub path: Option<PathBuf>,
    pub precision: usize,
}

impl OutputSpec {
    pub fn new(format: Format, path: Option<PathBuf>, precision: usize) -> Result<Self, String> {
        if !(1..=17).contains(&precision) {
            return Err(format!("precision must be in 1..=17, got {precision}"));
        }
        Ok(OutputSpec {
            format,
            path,
            precision,
        })
    }

    pub fn sink(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.path {
            Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    /// A value that could not be computed (CSV: empty, JSON: null).
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

/// `digits` significant digits in scientific notation, e.g. `1.50000e0`.
pub fn format_number(v: f64, digits: usize) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{:.*e}", digits - 1, v)
}

impl Cell {
    fn csv(&self, digits: usize) -> String {
        match self {
            Cell::Num(v) => format_number(*v, digits),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Num(v) => {
                // Round through the printed form so CSV and JSON carry the same value.
                let rounded: f64 = format_number(*v, digits).parse().unwrap_or(*v);
                Number::from_f64(rounded).map_or(Value::Null, Value::Number)
            }
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Missing => Value::Null,
        }
    }
}

/// Named columns and rows of cells.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: W, digits: usize) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.csv(digits)))?;
        }
        w.flush()
    }

    fn record(&self, row: &[Cell], digits: usize) -> Value {
        let mut m = Map::new();
        for (h, c) in self.headers.iter().zip(row) {
            m.insert(h.clone(), c.json(digits));
        }
        Value::Object(m)
    }

    pub fn to_json(&self, digits: usize) -> Value {
        Value::Array(self.rows.iter().map(|r| self.record(r, digits)).collect())
    }

    /// A one-row table as a single JSON object.
    pub fn to_json_object(&self, digits: usize) -> Value {
        self.rows
            .first()
            .map_or(Value::Null, |r| self.record(r, digits))
    }
}

/// Writes `table` per `spec`. Single-row tables become one JSON object.
pub fn emit(spec: &OutputSpec, table: &Table) -> io::Result<()> {
    let mut out = spec.sink()?;
    match spec.format {
        Format::Csv => table.write_csv(&mut out, spec.precision)?,
        Format::Json => {
            let v = if table.rows.len() == 1 {
                table.to_json_object(spec.precision)
            } else {
                table.to_json(spec.precision)
            };
            serde_json::to_writer_pretty(&mut out, &v)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

/// Re-emits a CSV document at `digits` significant digits, reformatting
/// every field that parses as a number.
pub fn reformat_csv(input: &str, digits: usize) -> io::Result<String> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input.as_bytes());
    let headers: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let mut table = Table::new(headers);
    for rec in r.records() {
        let rec = rec?;
        table.rows.push(
            rec.iter()
                .map(|f| {
                    if f.is_empty() {
                        Cell::Missing
                    } else if let Ok(i) = f.parse::<i64>() {
                        Cell::Int(i)
                    } else if let Ok(v) = f.parse::<f64>() {
                        Cell::Num(v)
                    } else if let Ok(b) = f.parse::<bool>() {
                        Cell::Bool(b)
                    } else {
                        Cell::Text(f.to_string())
                    }
                })
                .collect(),
        );
    }
    let mut buf = Vec::new();
    table.write_csv(&mut buf, digits)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}
