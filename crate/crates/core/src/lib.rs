//! Exact enumeration toolkit for sum-free sets.
//!
//! The crate covers sum-free and maximal sum-free subsets of `[n] = {1, …, n}`
//! and of finite abelian groups, link graphs built from Schur triples,
//! exact counting of maximal independent sets in graphs with loops, the
//! classical lower-bound families, and a harness of finite checks on link
//! graphs and their independent sets.
//!
//! All set-like values are bitsets over at most 128 positions, so integer
//! ground sets are limited to `n ≤ 127`, groups to order 128 and graphs to
//! 128 vertices. Counts are exact `u128` values.

pub mod abelian;
pub mod bits;
pub mod constructions;
pub mod enumerate;
mod error;
pub mod graph;
pub mod linkgraph;
pub mod miscount;
pub mod setcore;
pub mod verify;

pub use error::{Error, Result};

/// Exact count type used throughout.
pub type Count = u128;
