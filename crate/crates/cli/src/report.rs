use std::fmt::Display;
use std::io::{self, Write};

use serde::Serialize;
use serde_json::{Map, Value};

use asymptotic_hecke::weyl::GroupElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One value, with its JSON form and its plain-text form.
#[derive(Clone, Debug)]
pub struct Cell {
    json: Value,
    text: String,
}

impl Cell {
    pub fn elem(w: &GroupElement) -> Self {
        Self {
            json: serde_json::to_value(w).expect("element serializes"),
            text: w.to_compact(),
        }
    }

    /// A value whose JSON form is its `Serialize` output.
    pub fn ser<T: Serialize + Display>(x: &T) -> Self {
        Self {
            json: serde_json::to_value(x).expect("value serializes"),
            text: x.to_string(),
        }
    }

    /// A value rendered as a JSON string.
    pub fn text(x: impl Display) -> Self {
        let text = x.to_string();
        Self {
            json: Value::String(text.clone()),
            text,
        }
    }

    pub fn num(x: impl Into<serde_json::Number> + Display + Copy) -> Self {
        Self {
            json: Value::Number(x.into()),
            text: x.to_string(),
        }
    }

    pub fn bool(b: bool) -> Self {
        Self {
            json: Value::Bool(b),
            text: b.to_string(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Checks {
    pub pass: u64,
    pub fail: u64,
    pub counterexamples: Vec<String>,
}

impl Checks {
    pub const SHOWN: usize = 10;

    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.pass += 1;
        } else {
            self.fail += 1;
            if self.counterexamples.len() < Self::SHOWN {
                self.counterexamples.push(describe());
            }
        }
    }
}

/// The result of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub certified: bool,
    pub radius: Option<usize>,
    pub basis: Option<&'static str>,
    pub fields: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub checks: Option<Checks>,
}

impl Report {
    pub fn new(command: &str, certified: bool, radius: Option<usize>, basis: Option<&'static str>) -> Self {
        Self {
            command: command.to_string(),
            certified,
            radius,
            basis,
            fields: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            checks: None,
        }
    }

    pub fn field(mut self, key: &str, value: Cell) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn columns(mut self, cols: &[&str]) -> Self {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn failed(&self) -> bool {
        self.checks.as_ref().is_some_and(|c| c.fail > 0)
    }

    fn meta_json(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(self.command.clone()));
        m.insert("certified".into(), Value::Bool(self.certified));
        m.insert("radius".into(), self.radius.map_or(Value::Null, |r| r.into()));
        m.insert("basis".into(), self.basis.map_or(Value::Null, |b| b.into()));
        m
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.meta_json();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.json.clone());
        }
        if !self.columns.is_empty() {
            let rows = self
                .rows
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(|c| c.json.clone()))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            m.insert("rows".into(), Value::Array(rows));
        }
        if let Some(c) = &self.checks {
            m.insert("pass".into(), c.pass.into());
            m.insert("fail".into(), c.fail.into());
            m.insert("counterexamples".into(), c.counterexamples.clone().into());
        }
        Value::Object(m)
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json())?,
            Format::Table => self.write_table(out)?,
            Format::Csv => self.write_csv(out)?,
        }
        if let Some(c) = &self.checks {
            writeln!(out, "RESULT pass={} fail={}", c.pass, c.fail)?;
        }
        Ok(())
    }

    fn meta_text(&self) -> [(String, String); 3] {
        [
            ("certified".into(), self.certified.to_string()),
            ("radius".into(), self.radius.map_or("-".into(), |r| r.to_string())),
            ("basis".into(), self.basis.unwrap_or("-").to_string()),
        ]
    }

    fn write_table(&self, out: &mut impl Write) -> io::Result<()> {
        writeln!(out, "# {}", self.command)?;
        let meta = self.meta_text();
        let pairs: Vec<(&str, &str)> = meta
            .iter()
            .map(|(k, v)| (k.as_str(), v.as_str()))
            .chain(self.fields.iter().map(|(k, v)| (k.as_str(), v.text.as_str())))
            .collect();
        let kw = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        for (k, v) in pairs {
            writeln!(out, "{k:<kw$}  {v}")?;
        }
        if !self.columns.is_empty() {
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
            for r in &self.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.text.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out)?;
            writeln!(out, "{}", line(self.columns.iter().map(String::as_str).collect()))?;
            for r in &self.rows {
                writeln!(out, "{}", line(r.iter().map(|c| c.text.as_str()).collect()))?;
            }
        }
        if let Some(c) = &self.checks {
            for ce in &c.counterexamples {
                writeln!(out, "counterexample: {ce}")?;
            }
        }
        Ok(())
    }

    /// One CSV record per row, each prefixed by the metadata; commands
    /// without rows emit their fields as a single record.
    fn write_csv(&self, out: &mut impl Write) -> io::Result<()> {
        let meta = self.meta_text();
        let mut w = csv::Writer::from_writer(Vec::new());
        let (header, rows): (Vec<&str>, Vec<Vec<&str>>) = if self.columns.is_empty() {
            (
                self.fields.iter().map(|(k, _)| k.as_str()).collect(),
                vec![self.fields.iter().map(|(_, v)| v.text.as_str()).collect()],
            )
        } else {
            (
                self.columns.iter().map(String::as_str).collect(),
                self.rows
                    .iter()
                    .map(|r| r.iter().map(|c| c.text.as_str()).collect())
                    .collect(),
            )
        };
        let mut full: Vec<&str> = meta.iter().map(|(k, _)| k.as_str()).collect();
        full.extend(header);
        w.write_record(&full)?;
        for r in rows {
            let mut rec: Vec<&str> = meta.iter().map(|(_, v)| v.as_str()).collect();
            rec.extend(r);
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        out.write_all(&bytes)?;
        if let Some(c) = &self.checks {
            for ce in &c.counterexamples {
                writeln!(out, "# counterexample: {ce}")?;
            }
        }
        Ok(())
    }
}
