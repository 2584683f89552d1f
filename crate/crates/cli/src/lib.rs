//! Scenario runner for the `nccover` library: JSON scenario files in, JSON
//! reports and human summaries out.
//!
//! - [`scenario`]: the scenario format and its translation into library objects
//! - [`run`]: evaluation of a scenario into a [`report::Report`]
//! - [`report`]: the report format and its human rendering
//! - [`app`]: the command-line interface

pub mod app;
pub mod report;
pub mod run;
pub mod scenario;

pub use app::main_with;
pub use report::{render, Check, OracleComparison, Report};
pub use run::{run_scenario, RunOptions};
pub use scenario::{load_scenario, parse_scenario, InputError, Kind, Scenario, FORMAT_VERSION};
