use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use coopcolor_core::Error;
use serde::Serialize;
use serde_json::Value;

/// A failed command: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;
pub const EXIT_ABORTED: u8 = 4;
pub const EXIT_UNSUPPORTED: u8 = 5;

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(EXIT_INPUT, message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Validation(_) | Error::Parameter(_) | Error::Size(_) | Error::Domain(_) => {
                EXIT_INPUT
            }
            Error::Unsupported(_) => EXIT_UNSUPPORTED,
            Error::AlgorithmInvariant(_) => EXIT_INTERNAL,
        };
        Self::new(code, e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

pub fn read_text(path: &Path) -> CmdResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

/// `dir/name.json` → `dir/name.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunManifest<'a> {
    command: &'a str,
    parameters: &'a BTreeMap<String, Value>,
    seed: Option<u64>,
    tool_version: &'static str,
    elapsed_millis: u128,
}

/// Where a command's artifacts go, and the manifest written next to each.
pub struct Run {
    command: String,
    parameters: BTreeMap<String, Value>,
    seed: Option<u64>,
    started: Instant,
}

impl Run {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed: None,
            started: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameters serialize"),
        );
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    /// Writes `text` to `out` plus `<stem>.manifest.json`, or prints it when
    /// there is no output path.
    pub fn emit(&self, out: Option<&Path>, text: &str) -> CmdResult {
        match out {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => {
                write_text(path, text)?;
                self.write_manifest(path)
            }
        }
    }

    /// Writes an extra file that always goes to disk (chain documents,
    /// failure reports), with its own manifest.
    pub fn emit_file(&self, path: &Path, text: &str) -> CmdResult {
        write_text(path, text)?;
        self.write_manifest(path)
    }

    fn write_manifest(&self, artifact: &Path) -> CmdResult {
        let manifest = RunManifest {
            command: &self.command,
            parameters: &self.parameters,
            seed: self.seed,
            tool_version: env!("CARGO_PKG_VERSION"),
            elapsed_millis: self.started.elapsed().as_millis(),
        };
        write_text(&sibling(artifact, "manifest.json"), &to_json(&manifest))
    }
}

pub fn csv_text<T: Serialize>(rows: &[T]) -> CmdResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| Failure::new(EXIT_INTERNAL, format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::new(EXIT_INTERNAL, format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
