//! Degree-bounded T-ideal computations: consequence spaces, identity spaces,
//! proper parts and the checks built on them.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::algebras::AlgError;
use crate::exactlin::LinError;
use crate::freealg::FreeAlgError;

pub mod checks;
pub mod relations;
pub mod s4_internals;
pub mod spaces;
pub mod young;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TidealError {
    #[error("not a partition: {0:?}")]
    BadPartition(Vec<usize>),
    #[error("a tableau filling must use 1..n exactly once")]
    BadTableau,
    #[error("{what}: degree {n} exceeds the budget {limit} (partial dimension {partial_dim})")]
    Budget { what: String, n: usize, limit: usize, partial_dim: usize },
    #[error("polynomial is not multilinear of degree {0}")]
    NotMultilinear(usize),
    #[error("a span formula needs distinct variables at its leaves")]
    RepeatedLeaf,
    #[error("degree {0} is out of range")]
    Degree(usize),
    #[error(transparent)]
    Free(#[from] FreeAlgError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// Degree bounds and an optional wall-clock deadline.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Largest `n` for computations in `P_n`.
    pub pn_degree: usize,
    /// Largest `n` for computations in `Γ_n`.
    pub gamma_degree: usize,
    /// Largest total degree for a multihomogeneous consequence space.
    pub multidegree_total: usize,
    pub deadline: Option<Instant>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { pn_degree: 6, gamma_degree: 7, multidegree_total: 8, deadline: None }
    }
}

impl Limits {
    pub fn with_degree(n: usize) -> Limits {
        Limits { pn_degree: n, gamma_degree: n, multidegree_total: n.max(8), deadline: None }
    }

    pub fn with_timeout(mut self, t: Duration) -> Limits {
        self.deadline = Some(Instant::now() + t);
        self
    }
}
