//! Config loading, fixtures and command bodies for the `tnf` binary.

pub mod config;
pub mod example;
pub mod fixtures;
pub mod run;

pub use config::{Backend, ConfigDoc};
pub use run::RunError;
