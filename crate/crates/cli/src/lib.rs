//! Command-line front end for the convex-feasibility solvers: run single
//! instances from JSON configs, reproduce the named benchmark suites, and
//! re-analyze emitted traces.

pub mod config;
pub mod error;
pub mod logging;
pub mod report;
pub mod run;
pub mod suites;
pub mod traces;

pub use error::CliError;
