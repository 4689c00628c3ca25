//! Finite permutation groups, verbal subgroups and word-value criteria for
//! p-nilpotency.
//!
//! The modules build on each other bottom-up: [`perm`] and [`group`] are the
//! engine, [`structure`] computes subgroups and series, [`words`] parses and
//! evaluates group words, [`criteria`] turns the order conditions into
//! checkable reports, [`catalog`] builds the test groups and [`harness`]
//! runs sweeps over them.

pub mod arith;
pub mod catalog;
pub mod criteria;
pub mod error;
pub mod group;
pub mod harness;
pub mod perm;
pub mod structure;
pub mod words;

pub use error::{Error, Result};
pub use group::{group_from_generators, Limits, PermGroup};
pub use perm::{element_order, Perm};
pub use words::{parse_word, Word};
