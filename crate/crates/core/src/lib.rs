//! Resource-bounded learning in the limit: texts, teachers and membership
//! oracles driving learners over indexed families of sets, with every action
//! metered.
//!
//! The [`engine`] runs sessions and evaluates them against a polynomial
//! bound; [`families`] and [`agents`] supply targets and reference learners;
//! [`adversary`] builds the lower-bound constructions; [`experiments`] and
//! [`verify`] package all of it for the command line.

pub mod adversary;
pub mod agents;
pub mod codec;
pub mod descriptor;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod families;
pub mod verify;

/// Natural numbers. Codes that would leave this range report an overflow.
pub type Nat = u128;

pub use error::{Error, Result};
