//! File formats, multi-threaded scans and the command-line front end for
//! [`slrc_core`].

pub mod cli;
pub mod error;
pub mod formats;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
