//! Command-line front end and acceptance harness for `modphi-core`.

pub mod commands;
pub mod config;
pub mod harness;
pub mod output;

pub use modphi_core as core;
