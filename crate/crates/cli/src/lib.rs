//! Library half of the `twistfloer` command: instance parsing, command
//! dispatch and batch processing, kept separate from `main` for testing.

pub mod commands;
pub mod instance;

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

pub use commands::{Outcome, EXIT_FAILED, EXIT_INPUT, EXIT_OK};
pub use instance::{parse_instance, Instance, InstanceError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Validate,
    Act,
    Certify,
    Floer,
    Conjugate { perm: String },
    Cut,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Validate => "validate",
            Self::Act => "act",
            Self::Certify => "certify",
            Self::Floer => "floer",
            Self::Conjugate { .. } => "conjugate",
            Self::Cut => "cut",
        }
    }
}

/// Runs a command on instance text. Panics inside the computation are
/// caught and reported as input errors instead of aborting the process.
pub fn run_command(cmd: &Command, text: &str) -> Outcome {
    let inst = match parse_instance(text) {
        Ok(i) => i,
        Err(e) => return Outcome::input_error(cmd.name(), e.to_string()),
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| match cmd {
        Command::Validate => commands::validate(&inst),
        Command::Act => commands::act(&inst),
        Command::Certify => commands::certify(&inst),
        Command::Floer => commands::floer(&inst),
        Command::Conjugate { perm } => commands::conjugate(&inst, perm),
        Command::Cut => commands::cut(&inst),
    }));
    result.unwrap_or_else(|payload| {
        let msg = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Outcome::input_error(cmd.name(), format!("internal error: {msg}"))
    })
}

pub fn run_file(cmd: &Command, path: &Path) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_command(cmd, &text),
        Err(e) => Outcome::input_error(cmd.name(), format!("{}: {e}", path.display())),
    }
}

/// Runs `cmd` on every `*.json` file of `dir` in name order. The exit code
/// is the largest per-file code.
pub fn run_batch(cmd: &Command, dir: &Path) -> Outcome {
    let mut files: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return Outcome::input_error(cmd.name(), format!("{}: {e}", dir.display())),
    };
    files.sort();
    let mut code = EXIT_OK;
    let mut human = String::new();
    let mut results: Vec<Value> = Vec::new();
    for f in &files {
        let o = run_file(cmd, f);
        code = code.max(o.code);
        let name = f.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        human.push_str(&format!("== {name} (exit {})\n{}", o.code, o.human));
        results.push(json!({ "file": name, "exit_code": o.code, "result": o.json }));
    }
    Outcome {
        code,
        human,
        json: json!({ "command": cmd.name(), "batch": results }),
    }
}
