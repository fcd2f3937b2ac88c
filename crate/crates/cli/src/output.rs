//! Tabular output in plain, CSV, or JSON form.
//!
//! CSV: header row, UTF-8, '.' decimal separator, 12 significant digits
//! for reals. JSON: one top-level object with `meta` (version, config
//! echo) and `rows`.

use std::io::Write;

use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Value {
    Int(i64),
    UInt(u64),
    Float(f64),
    Str(String),
    Bool(bool),
}

impl Value {
    fn render_csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::UInt(v) => v.to_string(),
            Value::Float(v) => fmt_real(*v),
            Value::Str(s) => {
                if s.contains(',') || s.contains('"') {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Value::Bool(b) => b.to_string(),
        }
    }

    fn render_json(&self) -> Json {
        match self {
            Value::Int(v) => json!(v),
            Value::UInt(v) => json!(v),
            Value::Float(v) => {
                if v.is_finite() {
                    json!(v)
                } else {
                    json!(v.to_string())
                }
            }
            Value::Str(s) => json!(s),
            Value::Bool(b) => json!(b),
        }
    }
}

/// 12 significant digits, '.' decimal separator.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    if (-4..12).contains(&magnitude) {
        let decimals = (11 - magnitude).max(0) as usize;
        let s = format!("{v:.decimals$}");
        trim_zeros(&s)
    } else {
        format!("{v:.11e}")
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::render_csv).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: &mut W, config_echo: &str) -> std::io::Result<()> {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, value) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), value.render_json());
                }
                Json::Object(obj)
            })
            .collect();
        let doc = json!({
            "meta": {
                "version": env!("CARGO_PKG_VERSION"),
                "config": config_echo,
            },
            "rows": rows,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
    }

    /// Plain rendering: aligned columns for humans.
    pub fn write_plain<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        let render_raw = |v: &Value| match v {
            Value::Str(s) => s.clone(),
            other => other.render_csv(),
        };
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(render_raw).collect())
            .collect();
        for row in &rendered {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let header: Vec<String> = self
            .columns
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        writeln!(out, "{}", header.join("  "))?;
        for row in &rendered {
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(out, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}
