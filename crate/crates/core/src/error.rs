use std::path::PathBuf;

use thiserror::Error;

use crate::series::TimeSeries;

/// Everything that can go wrong while configuring or running a simulation.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid parameter `{field}`: {reason}")]
    Validation { field: &'static str, reason: String },

    #[error("population went extinct at step {step}")]
    Extinction {
        step: u64,
        /// Everything recorded before the population died out.
        partial: Box<TimeSeries>,
    },

    #[error("closed-form expression is degenerate: {0}")]
    Degenerate(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations (last change {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("could not parse {origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("unknown configuration key `{key}` in {origin}")]
    UnknownKey { origin: String, key: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl SimError {
    pub(crate) fn validation(field: &'static str, reason: impl Into<String>) -> Self {
        SimError::Validation {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        SimError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Validation { .. }
            | SimError::Parse { .. }
            | SimError::UnknownKey { .. }
            | SimError::Degenerate(_)
            | SimError::NoConvergence { .. } => 2,
            SimError::Extinction { .. } => 3,
            SimError::Io { .. } => 4,
        }
    }
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
