use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Broad failure class, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Data,
    Solver,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("negative {what} sample {value} at index {index}")]
    Negative {
        what: &'static str,
        index: usize,
        value: f64,
    },

    #[error("series has zero energy, cannot rescale")]
    ZeroEnergy,

    #[error("day {day} out of range (series has {days} days)")]
    DayOutOfRange { day: usize, days: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("annual demand is zero")]
    ZeroDemand,

    #[error("annual PV yield is zero")]
    ZeroYield,

    #[error("flexibility profile is empty")]
    EmptyProfile,

    #[error("dispatch problem infeasible: {0}")]
    Infeasible(String),

    #[error("branch-and-bound node budget of {budget} exceeded")]
    NodeBudget { budget: usize },

    #[error("numerical failure in LP solver: {0}")]
    Numerical(String),

    #[error("every sweep cell is invalid")]
    NoValidCell,

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) => ErrorClass::Config,
            Error::Infeasible(_) | Error::NodeBudget { .. } | Error::Numerical(_) | Error::NoValidCell => {
                ErrorClass::Solver
            }
            _ => ErrorClass::Data,
        }
    }
}
