//! Command results and their text and JSON renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => if *b { "yes" } else { "no" }.into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => match i64::try_from(*n) {
                Ok(v) => json!(v),
                Err(_) => json!(n.to_string()),
            },
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i128)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n as i128)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerdictLine {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub command: String,
    pub config: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub verdicts: Vec<VerdictLine>,
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn config(&mut self, key: &str, value: impl ToString) {
        self.config.push((key.into(), value.to_string()));
    }

    pub fn table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn verdict(&mut self, name: &str, holds: bool, detail: impl Into<String>) {
        self.verdicts.push(VerdictLine {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
    }

    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn to_json(&self) -> Value {
        let mut config = Map::new();
        for (k, v) in &self.config {
            config.insert(k.clone(), json!(v));
        }
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| {
                json!({
                    "name": t.name,
                    "columns": t.columns,
                    "rows": t.rows.iter().map(|r| r.iter().map(Cell::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({"name": v.name, "holds": v.holds, "detail": v.detail}))
            .collect();
        let mut root = json!({
            "command": self.command,
            "config": config,
            "tables": tables,
            "verdicts": verdicts,
        });
        if let Some(ms) = self.timing_ms {
            root["timing_ms"] = json!(ms);
        }
        root
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        for (k, v) in &self.config {
            writeln!(out, "{k}: {v}").unwrap();
        }
        for t in &self.tables {
            writeln!(out, "\n[{}]", t.name).unwrap();
            let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain([t.columns[j].chars().count()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |row: &[String]| {
                let padded: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&t.columns)).unwrap();
            for r in &cells {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        if !self.verdicts.is_empty() {
            out.push('\n');
        }
        for v in &self.verdicts {
            let mark = if v.holds { "PASS" } else { "FAIL" };
            if v.detail.is_empty() {
                writeln!(out, "{mark} {}", v.name).unwrap();
            } else {
                writeln!(out, "{mark} {}: {}", v.name, v.detail).unwrap();
            }
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "\ntiming_ms: {ms:.3}").unwrap();
        }
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}
