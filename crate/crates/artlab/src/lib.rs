//! Std front end for `artlab-core`: module files, JSON-lines and table
//! reports, rayon-backed scans, an on-disk result cache and the `artlab` CLI.

pub mod cache;
pub mod cli;
pub mod corpus;
pub mod module_file;
pub mod parallel;
pub mod report;

pub use cli::dispatch;
