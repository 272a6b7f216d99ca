use std::fmt;
use std::io::{IsTerminal, Write};
use std::path::Path;

use rs_repair::schemes::SchemeSpec;
use rs_repair::Error;

pub enum CliError {
    /// Bad input: exit 2.
    Spec(String),
    /// A check failed: exit 1. The report was already written.
    Verification(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Spec(s) | CliError::Verification(s) => f.write_str(s),
        }
    }
}

/// Variant name followed by the message, e.g. `FullRankViolated: full rank
/// condition violated`.
pub fn describe(e: &Error) -> String {
    let dbg = format!("{e:?}");
    let name = dbg.split(['(', ' ', '{']).next().unwrap_or("Error");
    format!("{name}: {e}")
}

pub fn spec_err(e: Error) -> CliError {
    CliError::Spec(describe(&e))
}

/// Inline JSON when the argument starts with '{', otherwise a file path.
pub fn load_spec(arg: &str) -> Result<SchemeSpec, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Spec(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Spec(format!("bad scheme spec: {e}")))
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Spec(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::Spec(e.to_string()))
        }
    }
}

pub fn emit_json(out: Option<&Path>, v: &serde_json::Value) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Spec(e.to_string()))?;
    s.push('\n');
    emit(out, &s)
}

/// ANSI colour only for a terminal and when RS_REPAIR_NO_COLOR is unset.
pub fn use_color(out: Option<&Path>) -> bool {
    out.is_none() && std::env::var_os("RS_REPAIR_NO_COLOR").is_none() && std::io::stdout().is_terminal()
}

pub fn verdict(ok: bool, color: bool) -> String {
    match (ok, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m".into(),
        (false, true) => "\x1b[31mFAIL\x1b[0m".into(),
        (true, false) => "PASS".into(),
        (false, false) => "FAIL".into(),
    }
}

pub fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
