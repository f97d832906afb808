//! Certificate-producing solvers for A-path packing and covering, built on
//! maximal subcubic frames, with exhaustive oracles and counterexample
//! generators.

pub mod cli;
pub mod epsolve;
pub mod error;
pub mod extract;
pub mod frame;
pub mod gallery;
pub mod graph;
pub mod labeling;
pub mod menger;
pub mod oracle;
pub mod random;

pub use error::{Error, Result};
