//! Command results and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// What a subcommand produced, before formatting.
#[derive(Clone, Debug)]
pub struct Report {
    pub operation: &'static str,
    pub params: BTreeMap<String, Value>,
    pub bound: Option<u64>,
    pub result: Value,
    /// Row form for CSV and text; scalar fields of `result` are used otherwise.
    pub table: Option<Table>,
    pub exit: i32,
}

impl Report {
    pub fn new(operation: &'static str, params: &impl Serialize, result: impl Serialize) -> Self {
        let params = match serde_json::to_value(params) {
            Ok(Value::Object(m)) => m
                .into_iter()
                .filter(|(_, v)| !v.is_null() && v.as_array().is_none_or(|a| !a.is_empty()))
                .collect(),
            _ => BTreeMap::new(),
        };
        Report {
            operation,
            params,
            bound: None,
            result: serde_json::to_value(result).expect("results serialize"),
            table: None,
            exit: 0,
        }
    }

    pub fn bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn exit(mut self, code: i32) -> Self {
        self.exit = code;
        self
    }

    pub fn render(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => self.render_json(out),
            Format::Csv => self.render_csv(out),
            Format::Text => self.render_text(out),
        }
    }

    fn render_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let doc = json!({
            "v": 1,
            "operation": self.operation,
            "parameters": self.params,
            "bound": self.bound,
            "result": self.result,
        });
        serde_json::to_writer_pretty(&mut *out, &doc)?;
        writeln!(out)
    }

    fn provenance(&self) -> String {
        let mut s = format!("operation={}", self.operation);
        for (k, v) in &self.params {
            s.push_str(&format!(" {k}={}", plain(v)));
        }
        if let (Some(b), false) = (self.bound, self.params.contains_key("bound")) {
            s.push_str(&format!(" bound={b}"));
        }
        s
    }

    fn rows(&self) -> Table {
        if let Some(t) = &self.table {
            return t.clone();
        }
        let mut t = Table::default();
        match &self.result {
            Value::Object(m) => {
                let mut row = Vec::new();
                for (k, v) in m {
                    t.header.push(k.clone());
                    row.push(plain(v));
                }
                t.rows.push(row);
            }
            v => {
                t.header.push("result".into());
                t.rows.push(vec![plain(v)]);
            }
        }
        t
    }

    fn render_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "# quotset v1 {}", self.provenance())?;
        let table = self.rows();
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(&table.header)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    fn render_text(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{}", self.provenance())?;
        match &self.table {
            Some(t) => {
                writeln!(out, "{}", t.header.join("  "))?;
                for row in &t.rows {
                    writeln!(out, "{}", row.join("  "))?;
                }
            }
            None => {
                let t = self.rows();
                for (k, v) in t.header.iter().zip(&t.rows[0]) {
                    writeln!(out, "{k}: {v}")?;
                }
            }
        }
        Ok(())
    }
}

/// Scalars print bare; arrays and objects as compact JSON.
pub fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
