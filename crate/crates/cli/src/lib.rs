//! File formats, JSON reports and the command-line front end for
//! `tanglerep-core`.

pub mod cli;
pub mod formats;
pub mod report;

pub use cli::run;
