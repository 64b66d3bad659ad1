//! Verification suites, floating-point oracles and data emitters on top of `hh-core`.

pub mod config;
pub mod emit;
pub mod oracle;
pub mod report;
pub mod suites;

pub use config::{Mode, SuiteConfig};
pub use report::{CheckRecord, Status, SuiteReport};
pub use suites::{run_suite, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("unknown emit target '{0}'")]
    UnknownTarget(String),
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Core(#[from] hh_core::HhError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
