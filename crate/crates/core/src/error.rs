use thiserror::Error;

use crate::simplicial::{ComplexKind, Face};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} in facet #{facet} is outside 1..={n_vertices}")]
    VertexOutOfRange {
        vertex: i64,
        facet: usize,
        n_vertices: u32,
    },
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("facet index {index} out of range (complex has {len} facets)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("empty facet selection")]
    EmptySelection,
    #[error("face count exceeds the capacity cap of {cap}")]
    CapacityExceeded { cap: usize },
    #[error("face {0} of the candidate subcomplex is not a face of the ambient complex")]
    NotASubcomplex(Face),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("operation requires a {expected} complex, got {found:?}")]
    Degenerate {
        expected: &'static str,
        found: ComplexKind,
    },
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not a pseudomanifold: {0}")]
    NotAPseudomanifold(String),
    #[error("t = {t} outside 0..={max}")]
    TOutOfRange { t: usize, max: usize },
    #[error("invalid facet partition: {0}")]
    InvalidPartition(String),
    #[error("facets {0} and {1} are adjacent in the Gamma_2 graph")]
    GammaTwoNotIsolated(usize, usize),
    #[error("hypotheses not met: {}", .0.join("; "))]
    HypothesesNotMet(Vec<String>),
    #[error("complex has {faces} faces, oracle limit is {limit}")]
    TooLarge { faces: usize, limit: usize },
    #[error("invalid collapse step #{index}: {reason}")]
    InvalidStep { index: usize, reason: String },
    #[error("Serre index must be at least 1, got {0}")]
    InvalidSerreIndex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::CapacityExceeded { .. } | Error::TooLarge { .. })
    }
}
