//! Tables and their CSV/JSON encodings.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Number, Value as Json};

use crate::config::Format;
use crate::error::{config_err, io_err, Result};

/// Significant digits written for every float.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Num(f64),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Text(if x { "true" } else { "false" }.into())
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.into())
    }
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`].
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal that reads back as `round_sig(x)`; exponent notation
/// outside `[1e-4, 1e16)`.
pub fn format_number(x: f64) -> String {
    let v = round_sig(x);
    let a = v.abs();
    if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Num(x) => format_number(*x),
            Value::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Int(i) => Json::from(*i),
            Value::Num(x) => Number::from_f64(round_sig(*x)).map_or_else(|| Json::String(x.to_string()), Json::Number),
            Value::Text(s) => Json::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let header: Vec<&str> = self.columns.iter().map(String::as_str).collect();
        let rows: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Value::csv).collect()).collect();
        emit_csv(&header, &rows)
    }

    pub fn to_json(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| Json::Array(r.iter().map(Value::json).collect()))
            .collect();
        json!({ "name": self.name, "columns": self.columns, "rows": rows })
    }

    pub fn file_name(&self, format: Format) -> String {
        match format {
            Format::Csv => format!("{}.csv", self.name),
            Format::Json => format!("{}.json", self.name),
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        for row in &self.rows {
            for v in row {
                if let Value::Text(s) = v {
                    if s.contains([',', '\n', '"']) {
                        return Err(config_err(format!("cell {s:?} cannot be written unquoted")));
                    }
                }
            }
        }
        Ok(match format {
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(&self.to_json())? + "\n",
        })
    }
}

pub fn emit_csv<S: AsRef<str>>(header: &[S], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let join = |cells: Vec<&str>| cells.join(",");
    out.push_str(&join(header.iter().map(AsRef::as_ref).collect()));
    out.push('\n');
    for row in rows {
        out.push_str(&join(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

/// Splits CSV written by [`Table::to_csv`] into header and rows.
pub fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or_else(|| config_err("empty CSV"))?
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| {
            let row: Vec<String> = l.split(',').map(str::to_string).collect();
            if row.len() == header.len() {
                Ok(row)
            } else {
                Err(config_err(format!("CSV row has {} cells, header {}", row.len(), header.len())))
            }
        })
        .collect::<Result<_>>()?;
    Ok((header, rows))
}

/// Writes each table into `dir`, returning the file names in order.
pub fn write_tables(dir: &Path, tables: &[Table], format: Format) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut names = Vec::new();
    for t in tables {
        let name = t.file_name(format);
        let path: PathBuf = dir.join(&name);
        std::fs::write(&path, t.render(format)?).map_err(io_err(&path))?;
        names.push(name);
    }
    Ok(names)
}

/// Ordered key/value summary carried into the manifest.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary(pub Vec<(String, Value)>);

impl Summary {
    pub fn add(&mut self, key: &str, v: impl Into<Value>) {
        self.0.push((key.into(), v.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Json {
        let mut m = Map::new();
        for (k, v) in &self.0 {
            m.insert(k.clone(), v.json());
        }
        Json::Object(m)
    }
}
