//! Combinatorial game theory over finite posets, specialized to Reverse
//! Hex and antimonotone set coloring games.
//!
//! The crate builds game forms from board positions, decides the
//! intrinsic order on games, checks parity, premotivity and
//! *-antimonotonicity, computes unique canonical forms, and composes
//! region analyses through monotone glue maps. A brute-force minimax
//! oracle over raw positions cross-validates the game-form pipeline.

pub mod canonical;
pub mod census;
pub mod cli;
pub mod error;
pub mod gameform;
pub mod generate;
pub mod order;
pub mod poset;
pub mod props;
pub mod rexboard;

pub use error::{Budget, Error, Result, DEFAULT_BUDGET};
