use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::config::{Format, RunConfig};

pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    /// `(name, unit)` per column.
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: &str, columns: &[(&str, &str)]) -> Self {
        Self {
            title: title.to_string(),
            columns: columns.iter().map(|(n, u)| (n.to_string(), u.to_string())).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.title);
        self.rows.push(row);
    }
}

/// Fixed significant-digit formatting, independent of locale.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mant), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Num(v) => fmt_sig(*v),
        Cell::Int(v) => v.to_string(),
        Cell::Bool(v) => v.to_string(),
        Cell::Text(t) => t.clone(),
    }
}

fn json_cell(c: &Cell) -> Value {
    match c {
        // rounded through the text form so both formats carry the same digits
        Cell::Num(v) if v.is_finite() => json!(fmt_sig(*v).parse::<f64>().expect("formatted number")),
        Cell::Num(_) => Value::Null,
        Cell::Int(v) => json!(v),
        Cell::Bool(v) => json!(v),
        Cell::Text(t) => json!(t),
    }
}

fn provenance(cfg: &RunConfig) -> BTreeMap<&'static str, String> {
    let mut p = BTreeMap::new();
    p.insert("command", cfg.command.to_string());
    p.insert("config_sha256", cfg.hash());
    p.insert("mode", cfg.mode.clone().unwrap_or_default());
    p.insert("seed", cfg.seed.to_string());
    p.insert("version", format!("zeno {}", env!("CARGO_PKG_VERSION")));
    p
}

pub fn render(tables: &[Table], cfg: &RunConfig) -> String {
    match cfg.format {
        Format::Csv => render_csv(tables, cfg),
        Format::Json => render_json(tables, cfg),
    }
}

fn render_csv(tables: &[Table], cfg: &RunConfig) -> String {
    let mut out = String::new();
    for (k, v) in provenance(cfg) {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    for t in tables {
        out.push_str(&format!("\n# table: {}\n", t.title));
        let header: Vec<String> = t.columns.iter().map(|(n, u)| format!("{n} [{u}]")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &t.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
    }
    out
}

fn render_json(tables: &[Table], cfg: &RunConfig) -> String {
    let tables: Vec<Value> = tables
        .iter()
        .map(|t| {
            let rows: Vec<BTreeMap<String, Value>> = t
                .rows
                .iter()
                .map(|r| t.columns.iter().zip(r).map(|((n, _), c)| (n.clone(), json_cell(c))).collect())
                .collect();
            let units: BTreeMap<&str, &str> = t.columns.iter().map(|(n, u)| (n.as_str(), u.as_str())).collect();
            let columns: Vec<&str> = t.columns.iter().map(|(n, _)| n.as_str()).collect();
            json!({ "title": t.title, "columns": columns, "units": units, "rows": rows })
        })
        .collect();
    let doc = json!({ "provenance": provenance(cfg), "tables": tables });
    serde_json::to_string_pretty(&doc).expect("json serialises") + "\n"
}
