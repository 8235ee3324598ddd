//! Sweep engine, configuration loading and table output for the
//! link-budget simulator CLI.

pub mod config;
pub mod engine;
pub mod figures;
pub mod params;
pub mod table;
