//! Report plumbing: every invocation produces one `RunReport`, serialized as
//! JSON with a fixed key order so identical runs emit identical bytes except
//! for the timing field.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::Value;

use crate::inputs::CliError;

/// Three-way outcome of a run. `pass` certifies the claim, `fail` means the
/// computation completed and refuted it, `error` means the inputs never
/// reached the mathematics.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Verdict::Pass => ExitCode::SUCCESS,
            Verdict::Fail => ExitCode::from(1),
            Verdict::Error => ExitCode::from(2),
        }
    }
}

/// Machine-readable result of one invocation. `inputs` echoes the resolved
/// inputs so the run is reproducible from the report alone; `residuals` lists
/// the identities or hypotheses that failed. The verdict is `pass` exactly
/// when `residuals` is empty.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub residuals: Vec<String>,
    pub data: BTreeMap<String, Value>,
    pub timings_ms: u128,
}

impl RunReport {
    pub fn exit_code(&self) -> ExitCode {
        self.verdict.exit_code()
    }
}

/// Verdict, residuals, and computed payload of a pipeline, before the
/// surrounding report (command name, inputs, timing) is attached.
pub struct Outcome {
    pub verdict: Verdict,
    pub residuals: Vec<String>,
    pub data: BTreeMap<String, Value>,
}

impl Outcome {
    pub fn pass(data: BTreeMap<String, Value>) -> Self {
        Outcome { verdict: Verdict::Pass, residuals: Vec::new(), data }
    }

    pub fn fail(residuals: Vec<String>, data: BTreeMap<String, Value>) -> Self {
        debug_assert!(!residuals.is_empty(), "a failure must name a residual");
        Outcome { verdict: Verdict::Fail, residuals, data }
    }

    /// Couples a certificate's flag to its residual list, preserving the
    /// invariant that `pass` carries no residuals and `fail` at least one.
    pub fn certified(passed: bool, residuals: Vec<String>, data: BTreeMap<String, Value>) -> Self {
        debug_assert_eq!(passed, residuals.is_empty(), "verdict must match residuals");
        if passed {
            Outcome::pass(data)
        } else {
            Outcome::fail(residuals, data)
        }
    }

    pub fn error(message: String) -> Self {
        Outcome { verdict: Verdict::Error, residuals: vec![message], data: BTreeMap::new() }
    }
}

/// Serializes the report to the `--out` file, or to standard output when no
/// file is given.
pub fn write_report(report: &RunReport, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
