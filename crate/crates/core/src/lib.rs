//! Two-colored spider diagrams: exact phases and scalars, a multigraph IR,
//! a tensor-contraction evaluator, a sound rewrite system and frontends for
//! circuits, one-way patterns and graph states.

pub mod diagram;
pub mod error;
pub mod eval;
pub mod frontends;
pub mod io;
mod iso;
pub mod matrix;
pub mod phase;
pub mod random;
pub mod rewrite;
pub mod scalar;

pub use diagram::{Color, Diagram, VertexKind, Violation, V};
pub use error::{Error, Result};
pub use eval::{evaluate, evaluate_with, hadamard_matrix, spider_matrix, Schedule};
pub use matrix::{equal_matrices, CompareMode, Comparison, ComplexMatrix, C64};
pub use phase::Phase;
pub use scalar::Scalar;
