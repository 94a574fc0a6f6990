//! Command-line surface: reports, group loading and the acceptance matrix.

pub mod commands;
pub mod error;
pub mod report;
pub mod source;
pub mod suite;
