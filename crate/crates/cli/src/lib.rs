//! Library side of the `fim` command: solving with certificates, checking
//! certificates, and corpus batches.

pub mod batch;
pub mod error;
pub mod report;
pub mod verify;

pub use error::CliError;
pub use report::{solve, Algo, Certificate, RunReport, SolveOptions};

/// Exact-solver edge cap when neither a flag nor the environment sets one.
pub const DEFAULT_ORACLE_CAP: usize = fim_core::oracle::DEFAULT_CAP;

/// Name of the environment variable overriding the exact-solver cap.
pub const ORACLE_CAP_ENV: &str = "FIM_ORACLE_CAP";
