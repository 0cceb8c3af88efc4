//! Numerical toolkit for differential subordination on the unit disk.

pub mod error;
pub mod fncat;
pub mod janowski;
pub mod admiss;
pub mod apps;
pub mod cli;
pub mod domains;
pub mod means;
pub mod report;
pub mod subord;
pub mod thresholds;
pub mod verify;
