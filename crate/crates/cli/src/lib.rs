//! Spec-file format, reports and subcommands behind the `intval` binary.

pub mod commands;
pub mod report;
pub mod spec;
