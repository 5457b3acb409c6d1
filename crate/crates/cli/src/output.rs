use std::fmt;

use mvdyn::rational::Rational;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// What a subcommand produced, in every format it supports.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Option<String>,
    /// Exit status on success; `prove check` reports invalid proofs with 1.
    pub status: u8,
}

impl Report {
    pub fn new(json: Value, text: impl Into<String>) -> Report {
        Report { json, text: text.into(), csv: None, status: 0 }
    }

    pub fn with_csv(mut self, csv: String) -> Report {
        self.csv = Some(csv);
        self
    }

    pub fn with_status(mut self, status: u8) -> Report {
        self.status = status;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        let mut out = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable"),
            Format::Text => self.text.clone(),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| CliError::Usage("this subcommand has no CSV output".into()))?,
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        Ok(out)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable input; exit 2.
    Usage(String),
    /// The computation itself failed; exit 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

pub fn domain<E: fmt::Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn usage<E: fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn rat(x: &Rational) -> Value {
    json!(x.to_string())
}

pub fn point(p: &[Rational]) -> Value {
    Value::Array(p.iter().map(rat).collect())
}

pub fn point_text(p: &[Rational]) -> String {
    p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
