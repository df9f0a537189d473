use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Serialize)]
pub struct Caps {
    pub levels: Option<usize>,
    pub states: usize,
    pub memos: usize,
    pub bytes: usize,
}

#[derive(Debug, Serialize)]
pub struct Provenance {
    pub system: Option<String>,
    pub caps: Caps,
}

#[derive(Debug, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Value,
    pub provenance: Provenance,
    pub wall_time: Option<f64>,
}

/// What a command hands back for printing.
pub struct Outcome {
    pub text: String,
    pub results: Value,
    /// `false` when a checked claim failed.
    pub verdict: bool,
    pub csv: Option<Vec<u8>>,
}

impl Outcome {
    pub fn new(text: String, results: impl Serialize, verdict: bool) -> Self {
        Outcome { text, results: serde_json::to_value(results).expect("serializable"), verdict, csv: None }
    }
}

pub fn write_target(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if path.as_os_str() == "-" {
        let mut out = io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()
    } else {
        fs::write(path, bytes)
    }
}

pub fn json_bytes(report: &CommandReport) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(report).expect("serializable");
    bytes.push(b'\n');
    bytes
}
