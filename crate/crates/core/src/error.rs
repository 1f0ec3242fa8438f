use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {op} got {lhs:?} and {rhs:?}")]
    Shape {
        op: &'static str,
        lhs: (usize, usize),
        rhs: (usize, usize),
    },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("power iteration did not converge after {iterations} sweeps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("numerical inconsistency: {0}")]
    Numerical(String),

    #[error("sub-array {index}: {source}")]
    SubArray {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("trial {trial} at {snr_db} dB: {source}")]
    Trial {
        trial: usize,
        snr_db: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn at_sub_array(self, index: usize) -> Self {
        Error::SubArray {
            index,
            source: Box::new(self),
        }
    }

    pub(crate) fn at_trial(self, trial: usize, snr_db: f64) -> Self {
        Error::Trial {
            trial,
            snr_db,
            source: Box::new(self),
        }
    }

    /// Innermost error with context wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::SubArray { source, .. } | Error::Trial { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit code used by the CLI: 2 validation, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Shape { .. } | Error::Validation(_) => 2,
            Error::NotPositiveDefinite { .. } | Error::NoConvergence { .. } | Error::Numerical(_) => 3,
            Error::Io { .. } => 4,
            Error::SubArray { .. } | Error::Trial { .. } => unreachable!("root() strips context"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_see_through_context() {
        let e = Error::NoConvergence {
            iterations: 3,
            residual: 1.0,
        }
        .at_sub_array(2)
        .at_trial(5, 10.0);
        assert_eq!(e.exit_code(), 3);
        assert!(e.to_string().contains("trial 5"));
        assert!(e.to_string().contains("sub-array 2"));
        assert_eq!(Error::validation("x").exit_code(), 2);
    }
}
