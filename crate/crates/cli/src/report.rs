use std::fmt;
use std::time::Instant;

use lieconf::Error;
use serde::Serialize;

use crate::Format;

/// Errors that end a command, with their exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Bad input, unknown family, violated family constraint: exit 2.
    Input(String),
    /// Cap instability or a violated internal contract: exit 3.
    Internal(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(s) | Failure::Internal(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapInstability(_)
            | Error::Contract(_)
            | Error::Closure(_)
            | Error::Realization(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub detail: Vec<String>,
}

/// Output of a command. Everything except `timing_ms` is determined by the
/// inputs and the seed.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "serde_json::Map::is_empty")]
    pub result: serde_json::Map<String, serde_json::Value>,
    pub timing_ms: u128,
    #[serde(skip)]
    start: Option<Instant>,
}

impl Report {
    pub fn new(command: &str, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            seed,
            checks: Vec::new(),
            result: serde_json::Map::new(),
            timing_ms: 0,
            start: Some(Instant::now()),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Vec<String>) {
        self.checks.push(CheckLine {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.result.insert(
            key.to_string(),
            serde_json::to_value(value).expect("report value serializes"),
        );
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Prints the report and returns whether every check passed.
    pub fn finish(mut self, format: Format) -> bool {
        self.timing_ms = self.start.map_or(0, |s| s.elapsed().as_millis());
        let mut out = String::new();
        match format {
            Format::Json => {
                out = serde_json::to_string_pretty(&self).expect("report serializes");
                out.push('\n');
            }
            Format::Text => {
                let mut line = |s: String| {
                    out.push_str(&s);
                    out.push('\n');
                };
                line(format!("command: {}", self.command));
                if let Some(seed) = self.seed {
                    line(format!("seed: {seed}"));
                }
                for (k, v) in &self.result {
                    match v {
                        serde_json::Value::String(s) => line(format!("{k}: {s}")),
                        serde_json::Value::Array(items) => {
                            line(format!("{k}:"));
                            for item in items {
                                match item {
                                    serde_json::Value::String(s) => line(format!("  {s}")),
                                    other => line(format!("  {other}")),
                                }
                            }
                        }
                        other => line(format!("{k}: {other}")),
                    }
                }
                for c in &self.checks {
                    line(format!(
                        "{} {}",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name
                    ));
                    for d in &c.detail {
                        line(format!("    {d}"));
                    }
                }
                line(format!("time: {} ms", self.timing_ms));
            }
        }
        emit(&out);
        self.passed()
    }
}

/// Writes to stdout, ignoring a closed pipe.
pub fn emit(s: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(s.as_bytes()).and_then(|_| stdout.flush());
}
