// SPDX-License-Identifier: Apache-2.0

//! Library side of the `spapt` binary: reports, table reproduction and scans.

use std::fmt;
use std::process::ExitCode;

use spapt::{LinalgError, SpaError, StateError};

pub mod app;
pub mod format;
pub mod report;
pub mod reproduce;
pub mod scan;

/// Failure classes, mapped onto process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad input: unreadable file, schema or invariant violation, parameter out of range.
    Input(String),
    /// The numerics failed on a valid input.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

fn is_numerical(e: &StateError) -> bool {
    match e {
        StateError::Linalg(_) => true,
        StateError::AtPath { source, .. } => is_numerical(source),
        _ => false,
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        if is_numerical(&e) {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<SpaError> for CliError {
    fn from(e: SpaError) -> Self {
        match e {
            SpaError::Linalg(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Numerical(format!("csv output: {e}"))
    }
}
