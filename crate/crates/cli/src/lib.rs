//! Command-line plumbing for `permbinom`: argument parsing, verification
//! sweeps, report serialization and the acceptance self-test.

pub mod config;
pub mod report;
pub mod selftest;
pub mod sweep;
