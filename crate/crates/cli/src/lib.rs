//! Dataset handling and report assembly for the `unlink` command.

pub mod analysis;
pub mod dataset;
pub mod matrix;
