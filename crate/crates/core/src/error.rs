use std::fmt;

use thiserror::Error;

/// Counters carried by a resource error so callers can report how far a
/// computation got before it was stopped.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ResourceStats {
    pub pairs_processed: u64,
    pub reductions: u64,
    pub basis_size: usize,
}

impl fmt::Display for ResourceStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs={} reductions={} basis={}",
            self.pairs_processed, self.reductions, self.basis_size
        )
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("coefficient domain or ring mismatch: {0}")]
    Mismatch(String),
    #[error("resource limit exceeded: {what} ({stats})")]
    Resource { what: String, stats: ResourceStats },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    pub fn resource(what: impl Into<String>) -> Self {
        Error::Resource {
            what: what.into(),
            stats: ResourceStats::default(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
