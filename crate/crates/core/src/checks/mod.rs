//! Bohr-type verdicts in the Loewner order.
//!
//! Every infinite series is split into an exactly computed partial sum and a
//! certified scalar tail. A check says `Holds` only when the partial sum plus
//! the tail stays below the right-hand side, `Violated` only when the partial
//! sum alone already exceeds it, and `Inconclusive` otherwise.

mod cor2;
mod proof;
mod radius;
mod search;
mod sharpness;
mod verdict;

pub use cor2::{check_bb2_norm_bound, check_cor2, chi, cor2_rhs, xi, xi_argmax, COR2_R_MAX, COR2_R_MIN};
pub use proof::{
    check_thm2_bounds, coefficient_bound_eq14, default_z_samples, proof_step_validate, ProofParams, ProofStep,
    ProofStepReport, Thm2Bounds, EQ14_DEPTH,
};
pub use radius::{
    bombieri_radius, empirical_bohr_radius, radius_from_abs, thm1_admissible_radius, AdmissibleRadius,
    EmpiricalRadius, RadiusBranch, RadiusReport, RADIUS_CAP,
};
pub use search::{counterexample_search, Relaxation, SearchOutcome, SearchWitness};
pub use sharpness::{sharpness_scan, SharpnessRow, SHARPNESS_DELTA};
pub use verdict::{
    check_bohr, check_series, majorant, majorant_value, BohrStatus, BohrVerdict, SeriesTerm, DEFAULT_TOL, N_CAP,
    N_START,
};

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::models::{HypothesisClass, ModelError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("step {step} belongs to {expected} but the function is a {actual} instance")]
    StepClassMismatch {
        step: &'static str,
        expected: &'static str,
        actual: &'static str,
    },
    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),
    #[error("argument outside its domain: {0}")]
    DomainError(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Fails with `HypothesisViolated` naming every failed hypothesis.
pub fn require_hypotheses(f: &crate::models::OperatorFunction, class: HypothesisClass) -> Result<(), CheckError> {
    let report = crate::models::hypothesis_check(f, class);
    if report.passed() {
        Ok(())
    } else {
        Err(CheckError::HypothesisViolated(format!(
            "{}: {}",
            class.as_str(),
            report.failures.join("; ")
        )))
    }
}

fn check_radius(r: f64) -> Result<(), CheckError> {
    if !(0.0..1.0).contains(&r) {
        return Err(CheckError::DomainError(format!("radius {r} not in [0, 1)")));
    }
    Ok(())
}
