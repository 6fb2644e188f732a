//! Dense complex linear algebra and the functional calculus every inequality
//! check in the crate rests on.

mod calculus;
mod eigen;
mod loewner;
mod matrix;
mod random;

pub use calculus::{
    abs_operator, commutator_norm, is_normal, normality_defect, operator_norm, psd_inverse, psd_power,
    psd_sqrt, PSD_CLAMP_REL, PSD_NEGATIVE_TOL,
};
pub use eigen::{hermitian_eigen, EigenDecomposition, HERMITIAN_TOL, JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL_TOL};
pub use loewner::{default_loewner_tol, loewner_leq, max_eigenpair, min_eigenpair, LoewnerRelation, LoewnerVerdict};
pub use matrix::{vec_norm, ComplexMatrix};
pub use random::{complex_gaussian, ginibre, random_unitary, random_unitary_with, seeded_rng, uniform_disk, unimodular};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix must have positive dimension")]
    EmptyMatrix,
    #[error("expected {expected} entries, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix is singular to working precision")]
    Singular,
}
