//! Command-line harness running the identity suites of `qmacdo-core`.

pub mod config;
pub mod report;
pub mod suites;

pub use config::{Cli, ConfigError, ReportFormat, Suite, SuiteConfig};
pub use report::{Record, Report};
