//! Command-line front end for the `hhss` engine.
//!
//! Exit codes: 0 success, 2 invalid input, 3 window too small, 4 internal
//! invariant violation (or a failed `verify`).

pub mod args;
pub mod commands;
pub mod render;

use clap::Parser;

use args::{Cli, Command};
use hhss::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_WINDOW: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Result of one invocation: exit code and the two output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Validation { .. } | Error::Unsupported(_) => EXIT_INPUT,
        Error::WindowTooSmall(_) => EXIT_WINDOW,
        Error::Inconsistent(_) => EXIT_INTERNAL,
    }
}

/// Caps the global thread pool at `HH_THREADS` when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("HH_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // A second initialisation in the same process is harmless.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = match &cli.command {
        Command::Hh(c) => commands::hh(c).map(|s| (s, true)),
        Command::Ss(c) => commands::ss(c).map(|s| (s, true)),
        Command::Center(c) => commands::center(c).map(|s| (s, true)),
        Command::Edge(c) => commands::edge(c).map(|s| (s, true)),
        Command::Verify(c) => commands::verify(c),
    };
    match result {
        Ok((stdout, true)) => Outcome { code: EXIT_OK, stdout, stderr: String::new() },
        Ok((stdout, false)) => Outcome {
            code: EXIT_INTERNAL,
            stdout,
            stderr: "verification failed\n".into(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
