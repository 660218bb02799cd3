//! Exact combinatorics of preference-restricted parking functions.
//!
//! `n` cars arrive in order on a one-way street; car `i` drives to its
//! preferred spot and takes the first free spot from there on. A preference
//! list is a *parking function* when every car parks, and an `S`-restricted
//! parking function when in addition every preference lies in `S`.
//!
//! The crate pairs every closed-form count with a brute-force oracle:
//!
//! - [`park`]: the parking procedure and its predicates.
//! - [`enumerate`]: exhaustive enumeration, the ground truth.
//! - [`formulas`]: closed forms, Catalan's triangle, Abel's identity,
//!   outcome fibers and the modular recursion.
//! - [`bijections`]: the prime/restricted pushforward, `u`-parking relabeling
//!   and the sign-reversing recoloring involution.
//! - [`circular`]: circular streets with modular preferences.
//! - [`verify`]: the invariant suites surfaced by the command line.

pub mod bijections;
pub mod circular;
pub mod enumerate;
pub mod error;
pub mod formulas;
#[cfg(test)]
mod invariants;
pub mod park;
pub mod restriction;
pub mod verify;

pub use error::{Error, Result};
pub use park::{ParkingResult, Permutation, PreferenceList};
pub use restriction::RestrictionSet;

/// Exact signed count. Cardinalities are checked nonnegative where returned.
pub type BigCount = num_bigint::BigInt;
