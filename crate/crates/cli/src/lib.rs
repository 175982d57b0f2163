//! Command-line front end and session HTTP service for `coqforge`.

pub mod commands;
pub mod server;
pub mod session;
