//! Smallest finite groups with an irreducible complex character of a given
//! prime or prime-squared degree.
//!
//! The library compares the candidate constructions (PSL_2(p), affine
//! Frobenius groups over the least suitable prime power, groups of order
//! p^5, and direct products), realizes the witnesses as concrete groups, and
//! checks their character degrees with a modular eigenspace method.

pub mod arith;
pub mod catalog;
pub mod chardeg;
pub mod enumerator;
pub mod error;
pub mod ffield;
pub mod group;
pub mod solver;

pub use error::{Error, Result};
