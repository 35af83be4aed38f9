//! Spec files, grids, reports and invariant suites behind the `krein`
//! command.

pub mod error;
pub mod grid;
pub mod report;
pub mod run;
pub mod spec;
pub mod suites;

pub use error::CliError;
pub use report::{CheckRow, Report};
pub use spec::{SpecFile, Task};
