//! Exact relative commutativity degrees of finite groups.
//!
//! The crate computes `d(H, G)` for every subgroup `H` of a finite group `G`,
//! collects the distinct values into the degree spectrum, recognises the
//! structural families whose spectra have at most five values, and audits a
//! number of known inequalities and open conjectures against a catalog of
//! small groups.

pub mod arith;
pub mod bitset;
pub mod catalog;
pub mod classifier;
pub mod cli;
pub mod commdeg;
pub mod error;
pub mod group;
pub mod lab;
pub mod lattice;
pub mod rational;
pub mod report;
pub mod spec;

pub use bitset::Bitset;
pub use error::{Error, Result};
pub use group::{FiniteGroup, QuotientMap, Subgroup};
