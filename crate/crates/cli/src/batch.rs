//! Line-delimited batch jobs, evaluated in parallel and written in input order.

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use crate::commands::{self, CliError, Status};
use crate::report::{BatchEntry, SCHEMA_VERSION};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Job {
    cmd: String,
    #[serde(default)]
    args: Value,
}

fn run_job(line: &str) -> (Option<String>, Result<commands::Outcome, String>) {
    let job: Job = match serde_json::from_str(line) {
        Ok(j) => j,
        Err(e) => return (None, Err(format!("invalid job: {e}"))),
    };
    fn args<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, CliError> {
        serde_json::from_value(v).map_err(|e| CliError::Input(format!("invalid args: {e}")))
    }
    let result = match job.cmd.as_str() {
        "convert" => args(job.args).and_then(|a| commands::convert(&a)),
        "siegel" => args(job.args).and_then(|a| commands::siegel(&a)),
        "newton" => args(job.args).and_then(|a| commands::newton(&a)),
        "hyper" => args(job.args).and_then(|a| commands::hyper(&a)),
        other => Err(CliError::Input(format!("unknown command {other:?}"))),
    };
    (Some(job.cmd), result.map_err(|e| e.to_string()))
}

pub struct BatchResult {
    pub entries: Vec<BatchEntry>,
    pub ok: usize,
    pub failed: usize,
    pub status: Status,
}

impl BatchResult {
    pub fn summary(&self) -> String {
        format!("{} ok / {} failed", self.ok, self.failed)
    }

    /// One compact JSON object per line.
    pub fn lines(&self) -> String {
        self.entries
            .iter()
            .map(|e| serde_json::to_string(e).expect("entry serializes") + "\n")
            .collect()
    }
}

/// Blank lines are skipped; every other line yields exactly one entry.
pub fn run(jobs: &str) -> BatchResult {
    let lines: Vec<&str> = jobs.lines().filter(|l| !l.trim().is_empty()).collect();
    let entries: Vec<BatchEntry> = lines
        .par_iter()
        .enumerate()
        .map(|(index, line)| {
            let (cmd, result) = run_job(line);
            match result {
                Ok(o) => BatchEntry {
                    schema_version: SCHEMA_VERSION,
                    index,
                    cmd,
                    exit_code: o.status.code(),
                    report: Some(o.report),
                    error: None,
                },
                Err(e) => BatchEntry {
                    schema_version: SCHEMA_VERSION,
                    index,
                    cmd,
                    exit_code: Status::Input.code(),
                    report: None,
                    error: Some(e),
                },
            }
        })
        .collect();
    let failed = entries.iter().filter(|e| e.exit_code != 0).count();
    let status = if entries.iter().any(|e| e.exit_code == Status::Internal.code()) {
        Status::Internal
    } else if failed > 0 {
        Status::Negative
    } else {
        Status::Ok
    };
    BatchResult { ok: entries.len() - failed, failed, entries, status }
}
