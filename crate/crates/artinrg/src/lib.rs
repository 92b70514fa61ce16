//! File formats, certificate IO and the command-line driver for
//! [`artinrg_core`].

pub mod builtins;
pub mod commands;
pub mod formats;
pub mod report;

pub use report::{RunReport, Status};
