use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::calculus::operator_norm;
use super::eigen::{hermitian_eigen, HERMITIAN_TOL};
use super::matrix::{check_dims, ComplexMatrix};
use super::LinalgError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoewnerRelation {
    LessOrEqual,
    NotLessOrEqual,
    Boundary,
}

/// Outcome of comparing two Hermitian matrices in the Loewner order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoewnerVerdict {
    pub relation: LoewnerRelation,
    /// `λ_min(B − A)`.
    pub min_gap: f64,
    pub tolerance: f64,
    /// Unit vector attaining `min_gap`; present iff `NotLessOrEqual`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[f64; 2]>>,
}

impl LoewnerVerdict {
    /// `LessOrEqual` or `Boundary`: the non-strict `⪯` is not refuted.
    pub fn holds(&self) -> bool {
        self.relation != LoewnerRelation::NotLessOrEqual
    }

    pub fn witness_vector(&self) -> Option<Vec<Complex64>> {
        self.witness
            .as_ref()
            .map(|w| w.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    }

    /// Classifies a known gap against `tolerance`.
    pub fn from_gap(min_gap: f64, tolerance: f64, witness: Option<Vec<Complex64>>) -> Self {
        let relation = if min_gap >= tolerance {
            LoewnerRelation::LessOrEqual
        } else if min_gap <= -tolerance {
            LoewnerRelation::NotLessOrEqual
        } else {
            LoewnerRelation::Boundary
        };
        let witness = match relation {
            LoewnerRelation::NotLessOrEqual => witness.map(|w| w.iter().map(|z| [z.re, z.im]).collect()),
            _ => None,
        };
        Self {
            relation,
            min_gap,
            tolerance,
            witness,
        }
    }
}

/// Default comparison tolerance `1e-9·(1+‖A‖+‖B‖)`.
pub fn default_loewner_tol(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    1e-9 * (1.0 + operator_norm(a) + operator_norm(b))
}

/// Decides `A ⪯ B` from `λ_min(B − A)`.
pub fn loewner_leq(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<LoewnerVerdict, LinalgError> {
    check_dims(a, b)?;
    for m in [a, b] {
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL * (1.0 + m.frobenius_norm()) {
            return Err(LinalgError::NotHermitian { defect });
        }
    }
    assert!(tol > 0.0, "Loewner tolerance must be positive");
    let diff = (b - a).hermitian_part();
    let eig = hermitian_eigen(&diff)?;
    let min_gap = eig.min_eigenvalue();
    Ok(LoewnerVerdict::from_gap(min_gap, tol, Some(eig.basis.column(0))))
}

/// λ_min of a Hermitian matrix together with its unit eigenvector.
pub fn min_eigenpair(h: &ComplexMatrix) -> Result<(f64, Vec<Complex64>), LinalgError> {
    let eig = hermitian_eigen(h)?;
    Ok((eig.min_eigenvalue(), eig.basis.column(0)))
}

/// λ_max of a Hermitian matrix together with its unit eigenvector.
pub fn max_eigenpair(h: &ComplexMatrix) -> Result<(f64, Vec<Complex64>), LinalgError> {
    let eig = hermitian_eigen(h)?;
    let n = h.dim();
    Ok((eig.max_eigenvalue(), eig.basis.column(n - 1)))
}
