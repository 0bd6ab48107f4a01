//! Command implementations behind the `harmonia` binary.

pub mod commands;
pub mod document;
pub mod svg;
