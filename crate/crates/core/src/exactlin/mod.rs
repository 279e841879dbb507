//! Exact rational linear algebra over explicitly indexed coordinate spaces.

mod rat;
mod subspace;

pub use rat::{ParseRatError, Rat};
pub use subspace::{IndexedVector, KeyUniverse, SparseRow, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("key {0} is outside the declared universe")]
    KeyOutsideUniverse(String),
    #[error("operands live over different key universes")]
    UniverseMismatch,
}
