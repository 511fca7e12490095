//! Numerical checks of copy/delete structures on `ℂ^d`: Frobenius laws,
//! classical and unbiased points, Hopf and bialgebra laws, coherence,
//! closedness, the phase group and its automorphisms.
//!
//! Every residual is the max-norm of a difference and passes at [`TOL`].

mod families;
mod group;
mod pair;
mod report;
mod structure;

pub use families::{f4_matrix, parse_checks, run_checks, Check, Family, GRID_SAMPLES};
pub use group::check_phase_group;
pub use pair::{
    check_automorphism, check_bialg_comm, check_closed, check_coherent, check_comul_comm, check_complementary,
    check_dimension, check_hopf, check_oper_comm, coherify, dualiser, pair_tensor, StructurePair,
};
pub use report::Report;
pub use structure::{
    fourier_matrix, obs_fourier, obs_from_basis, obs_from_hadamard, obs_standard, obs_tensor, standard_basis,
    swap_matrix, transpose_conjugate, ObservableStructure,
};

pub const TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("vectors are not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("not a dephased complex Hadamard matrix: {0}")]
    NotHadamard(String),
    #[error("structure has no stored basis")]
    MissingBasis,
    #[error("basis vector {0} has zero overlap with the reference point")]
    ZeroOverlap(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, OracleError>;
