//! Link invariants from planar diagram codes, lower-bound obstructions for
//! unlinking numbers, and a crossing-change search for upper bounds.

pub mod bounds;
pub mod covering;
pub mod diagram;
pub mod embeddings;
pub mod error;
pub mod exactla;
pub mod invariants;
pub mod search;

pub use error::{Error, Result};
