//! Lowers finite-group realizability questions (inverse Galois, subgroup
//! containment, inverse automorphism) over a described base ring to
//! explicit polynomial systems, and checks the results with independent
//! finite-field and exact oracles.

pub mod algebra;
pub mod encoder;
pub mod error;
pub mod group;
pub mod oracle;
pub mod pipeline;
pub mod par;

pub use error::{Error, Result};
