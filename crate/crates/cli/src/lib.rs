//! Front end for `kappa-core`: the `.kappa` workspace format, commands and reports.

pub mod commands;
pub mod demo;
pub mod expr;
pub mod report;
pub mod workspace;
