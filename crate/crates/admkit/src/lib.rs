//! Command-line front end for `admkit-core`: configuration, deterministic
//! JSON/CSV/table output and the acceptance checks behind `admkit verify`.

pub mod checks;
pub mod cli;
pub mod config;
pub mod output;
pub mod schema;
