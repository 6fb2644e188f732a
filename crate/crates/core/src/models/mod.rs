//! Operator-valued holomorphic functions on the unit disk.
//!
//! Four representations are supported. Each evaluates exactly (up to linear
//! solve roundoff) and produces its Taylor coefficients in closed form with a
//! certified bound on the norms of the coefficients it does not return.

mod certify;
mod dft;
mod file;
mod generate;
mod half_plane;
mod hypothesis;
mod mobius;
mod polynomial;
mod schur;
mod series;
mod transfer;

pub use certify::{certify_schur_bound, SchurCertificate};
pub use dft::{coefficients_dft, DftSeries};
pub use file::{FunctionClass, FunctionFile};
pub use generate::{
    generate_cor2_instance, generate_thm1_instance, generate_thm2_instance, generate_transfer_instance,
    HalfPlaneOverrides, MobiusOverrides,
};
pub use half_plane::{HalfPlaneLift, HALF_PLANE_BETA_MAX};
pub use hypothesis::{hypothesis_check, HypothesisClass, HypothesisReport, HYPOTHESIS_GRID_POINTS, HYPOTHESIS_GRID_RADIUS, HYPOTHESIS_TOL};
pub use mobius::{MobiusChannel, MobiusLift};
pub use polynomial::Polynomial;
pub use schur::{reconstruct_from_transform, schur_transform, schur_transform_value, FunctionSamples};
pub use series::{CoefficientSeries, Exactness};
pub use transfer::TransferRealization;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};

/// Largest admissible `|z|` for evaluation.
pub const DOMAIN_RADIUS: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("point |z| = {modulus} lies outside the evaluation domain |z| <= 1 - 1e-9")]
    OutsideDomain { modulus: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("DFT grid of {grid} points is too coarse for {required} (needs M >= 4(N+1))")]
    GridTooCoarse { grid: usize, required: usize },
    #[error("operator is not invertible (condition number {condition:e})")]
    NotInvertible { condition: f64 },
    #[error("A0 does not commute with phi(z) (defect {defect:e})")]
    CommutationViolated { defect: f64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("certified sup bound {bound} exceeds 1 - margin at z = {point}")]
    BoundExceeded { bound: f64, point: Complex64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Polynomial,
    MobiusLift,
    TransferRealization,
    HalfPlaneLift,
}

impl FunctionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FunctionKind::Polynomial => "polynomial",
            FunctionKind::MobiusLift => "mobius_lift",
            FunctionKind::TransferRealization => "transfer_realization",
            FunctionKind::HalfPlaneLift => "half_plane_lift",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorFunction {
    Polynomial(Polynomial),
    MobiusLift(MobiusLift),
    TransferRealization(TransferRealization),
    HalfPlaneLift(HalfPlaneLift),
}

impl OperatorFunction {
    pub fn kind(&self) -> FunctionKind {
        match self {
            OperatorFunction::Polynomial(_) => FunctionKind::Polynomial,
            OperatorFunction::MobiusLift(_) => FunctionKind::MobiusLift,
            OperatorFunction::TransferRealization(_) => FunctionKind::TransferRealization,
            OperatorFunction::HalfPlaneLift(_) => FunctionKind::HalfPlaneLift,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            OperatorFunction::Polynomial(p) => p.dim(),
            OperatorFunction::MobiusLift(m) => m.dim(),
            OperatorFunction::TransferRealization(t) => t.dim(),
            OperatorFunction::HalfPlaneLift(h) => h.dim(),
        }
    }

    /// `f(z)` for `|z| ≤ 1 − 1e−9`.
    pub fn evaluate(&self, z: Complex64) -> Result<ComplexMatrix, ModelError> {
        if z.norm() > DOMAIN_RADIUS {
            return Err(ModelError::OutsideDomain { modulus: z.norm() });
        }
        Ok(self.evaluate_unchecked(z))
    }

    pub(crate) fn evaluate_unchecked(&self, z: Complex64) -> ComplexMatrix {
        match self {
            OperatorFunction::Polynomial(p) => p.evaluate(z),
            OperatorFunction::MobiusLift(m) => m.evaluate(z),
            OperatorFunction::TransferRealization(t) => t.evaluate(z),
            OperatorFunction::HalfPlaneLift(h) => h.evaluate(z),
        }
    }

    /// `A_0 … A_N` with a certified bound on `‖A_n‖`, `n > N`.
    pub fn coefficients(&self, n: usize) -> CoefficientSeries {
        match self {
            OperatorFunction::Polynomial(p) => p.coefficients(n),
            OperatorFunction::MobiusLift(m) => m.coefficients(n),
            OperatorFunction::TransferRealization(t) => t.coefficients(n),
            OperatorFunction::HalfPlaneLift(h) => h.coefficients(n),
        }
    }

    pub fn initial_coefficient(&self) -> ComplexMatrix {
        self.evaluate_unchecked(Complex64::new(0.0, 0.0))
    }

    /// A priori bound on `sup_n ‖A_n‖`, used by the DFT aliasing estimate.
    pub fn coefficient_norm_bound(&self) -> f64 {
        match self {
            OperatorFunction::Polynomial(p) => p.max_coefficient_norm(),
            OperatorFunction::MobiusLift(_) | OperatorFunction::TransferRealization(_) => 1.0,
            OperatorFunction::HalfPlaneLift(h) => h.coefficient_norm_bound(),
        }
    }

    /// The hypothesis class the representation satisfies by construction.
    pub fn native_class(&self) -> Option<HypothesisClass> {
        match self {
            OperatorFunction::MobiusLift(_) => Some(HypothesisClass::Thm1),
            OperatorFunction::HalfPlaneLift(_) => Some(HypothesisClass::Thm2),
            OperatorFunction::TransferRealization(_) => Some(HypothesisClass::Schur),
            OperatorFunction::Polynomial(_) => None,
        }
    }

    /// Black-box coefficient extraction from samples on `|z| = rho`.
    pub fn coefficients_dft(&self, rho: f64, n: usize, grid: usize) -> Result<DftSeries, ModelError> {
        if !(rho > 0.0 && rho <= 1.0 - 1e-3) {
            return Err(ModelError::InvalidParameter(format!("DFT radius {rho} not in (0, 1-1e-3]")));
        }
        coefficients_dft(|z| self.evaluate_unchecked(z), self.dim(), rho, n, grid, self.coefficient_norm_bound())
    }
}

impl From<Polynomial> for OperatorFunction {
    fn from(p: Polynomial) -> Self {
        OperatorFunction::Polynomial(p)
    }
}

impl From<MobiusLift> for OperatorFunction {
    fn from(m: MobiusLift) -> Self {
        OperatorFunction::MobiusLift(m)
    }
}

impl From<TransferRealization> for OperatorFunction {
    fn from(t: TransferRealization) -> Self {
        OperatorFunction::TransferRealization(t)
    }
}

impl From<HalfPlaneLift> for OperatorFunction {
    fn from(h: HalfPlaneLift) -> Self {
        OperatorFunction::HalfPlaneLift(h)
    }
}

pub(crate) fn check_unitary(u: &ComplexMatrix, what: &str) -> Result<(), ModelError> {
    let defect = (&(&u.adjoint() * u) - &ComplexMatrix::identity(u.dim())).frobenius_norm();
    if defect > 1e-10 * u.dim() as f64 {
        return Err(ModelError::InvalidParameter(format!("{what} is not unitary (defect {defect:e})")));
    }
    Ok(())
}

/// Scalar Möbius self-map `(λ − z)/(1 − conj(λ) z)` as a dim-1 lift.
pub fn scalar_mobius(lambda: f64) -> OperatorFunction {
    MobiusLift::new(
        ComplexMatrix::identity(1),
        vec![MobiusChannel::new(Complex64::new(lambda, 0.0), Complex64::new(-1.0, 0.0), 1)],
    )
    .expect("|lambda| < 1")
    .into()
}
