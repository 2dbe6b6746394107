//! Exact combinatorics of binary words under insertions and deletions.

pub mod cli;
pub mod codes;
pub mod editops;
pub mod error;
pub mod experiment;
pub mod extremal;
pub mod graph;
pub mod lcsscs;
pub mod limits;
pub mod packed;
pub mod report;
pub mod word;

pub use error::{Error, Result};
pub use limits::Limits;
pub use word::Word;
