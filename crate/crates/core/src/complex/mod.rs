//! Bigraded integer chain complexes, cube-shaped diagrams of complexes and
//! their higher cofibers, and homology by Smith normal form.

mod chain;
mod cofiber;
mod snf;
mod sparse;

use thiserror::Error;

pub use chain::{cone, BigradedComplex, ChainMap, Generator, Group, HomologyTable};
pub use cofiber::{
    cofiber_assoc, cofiber_hocolim, cofiber_hocolim_cellular, cofiber_hocolim_simplicial, cofiber_inductive,
    nest, total_complex, AssocReport, CubeDiagram, Offsets, SignRule, SIMPLICIAL_LIMIT,
};
pub(crate) use cofiber::spread;
pub use snf::{dense_invariants, rank, smith_invariants, torsion};
pub use sparse::SparseMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("degree {degree}: expected a {}x{} matrix, found {}x{}", expected.0, expected.1, found.0, found.1)]
    DimensionMismatch {
        degree: i64,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("d∘d is nonzero starting in degree {degree}")]
    NotSquareZero { degree: i64 },
    #[error("map out of degree {degree} does not preserve q")]
    NotHomogeneous { degree: i64 },
    #[error("map is not a chain map in degree {degree}")]
    NotChainMap { degree: i64 },
    #[error("edge ({mask:#b}, {direction}) is not a chain map: {reason}")]
    BadEdge { mask: usize, direction: usize, reason: String },
    #[error("face at {base:#b} in directions {i},{j} does not commute")]
    NonCommutingFace { base: usize, i: usize, j: usize },
    #[error("cube of dimension {dim} needs {expected} vertices, got {found}")]
    VertexCount { dim: usize, expected: usize, found: usize },
    #[error("edge ({mask:#b}, {direction}) does not exist in a {dim}-cube")]
    InvalidEdge { mask: usize, direction: usize, dim: usize },
    #[error("invalid coordinate split: {0}")]
    InvalidSplit(String),
    #[error("gauge needs {expected} entries, got {found}")]
    GaugeLength { expected: usize, found: usize },
}
