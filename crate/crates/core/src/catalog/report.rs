use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            other => Err(Error::Input(format!("unknown format `{other}`"))),
        }
    }
}

/// One named verdict with its measured values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub name: String,
    pub passed: bool,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Self {
            name: name.into(),
            passed,
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl ToString) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn line(&self) -> String {
        let mut s = format!("CHECK {} {}", self.name, if self.passed { "PASS" } else { "FAIL" });
        for (k, v) in &self.fields {
            write!(s, " {k}={v}").ok();
        }
        s
    }
}

/// Output of a command: free-form detail for people and records for machines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub detail: Vec<String>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.detail.push(line.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.detail.extend(other.detail);
        self.records.extend(other.records);
    }

    /// Machine output is the sorted record lines only.
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for l in &self.detail {
                    out.push_str(l);
                    out.push('\n');
                }
                for r in &self.records {
                    out.push_str(&r.line());
                    out.push('\n');
                }
                let failed = self.records.iter().filter(|r| !r.passed).count();
                writeln!(out, "{} checks, {failed} failed", self.records.len()).ok();
            }
            Format::Machine => {
                let mut lines: Vec<String> = self.records.iter().map(Record::line).collect();
                lines.sort();
                for l in lines {
                    out.push_str(&l);
                    out.push('\n');
                }
            }
        }
        out
    }
}

/// `[0, 1, 6]` as `0,1,6`.
pub fn list<T: ToString>(v: &[T]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    s.join(",")
}

/// Per-dimension lists joined with `/`.
pub fn table<T: ToString>(v: &[Vec<T>]) -> String {
    let s: Vec<String> = v.iter().map(|r| list(r)).collect();
    s.join("/")
}
