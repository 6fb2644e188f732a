//! The transform `φ(z) = (f(z) − A_0)(I − A_0* f(z))⁻¹` and its inverse.

use num_complex::Complex64;

use super::{ModelError, OperatorFunction};
use crate::linalg::{commutator_norm, is_normal, operator_norm, ComplexMatrix};

/// Condition number above which `I − A_0* f(z)` counts as singular.
pub const SCHUR_CONDITION_LIMIT: f64 = 1e12;
/// Slack on the contraction bounds `‖f(z)‖ ≤ 1`, `‖φ(z)‖ ≤ 1`.
pub const CONTRACTION_SLACK: f64 = 1e-9;
pub const COMMUTATION_TOL: f64 = 1e-8;

/// Matching lists of points and operator values.
#[derive(Debug, Clone)]
pub struct FunctionSamples {
    points: Vec<Complex64>,
    values: Vec<ComplexMatrix>,
}

impl FunctionSamples {
    pub fn new(points: Vec<Complex64>, values: Vec<ComplexMatrix>) -> Result<Self, ModelError> {
        if points.len() != values.len() {
            return Err(ModelError::InvalidParameter(format!(
                "{} points but {} values",
                points.len(),
                values.len()
            )));
        }
        if let Some(z) = points.iter().find(|z| z.norm() > super::DOMAIN_RADIUS) {
            return Err(ModelError::OutsideDomain { modulus: z.norm() });
        }
        Ok(Self { points, values })
    }

    pub fn sample(f: &OperatorFunction, points: &[Complex64]) -> Result<Self, ModelError> {
        let values = points.iter().map(|&z| f.evaluate(z)).collect::<Result<Vec<_>, _>>()?;
        Self::new(points.to_vec(), values)
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn values(&self) -> &[ComplexMatrix] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn condition_number(m: &ComplexMatrix, inverse: &ComplexMatrix) -> f64 {
    operator_norm(m) * operator_norm(inverse)
}

/// `φ = (f_z − A_0)(I − A_0* f_z)⁻¹` for given values `A_0 = f(0)` and `f_z = f(z)`.
pub fn schur_transform_value(a0: &ComplexMatrix, fz: &ComplexMatrix) -> Result<ComplexMatrix, ModelError> {
    let a0_norm = operator_norm(a0);
    if a0_norm >= 1.0 {
        return Err(ModelError::HypothesisViolated(format!("‖A0‖ = {a0_norm} is not < 1")));
    }
    let f_norm = operator_norm(fz);
    if f_norm > 1.0 + CONTRACTION_SLACK {
        return Err(ModelError::HypothesisViolated(format!("‖f(z)‖ = {f_norm} exceeds 1")));
    }
    let denom = &ComplexMatrix::identity(a0.dim()) - &(&a0.adjoint() * fz);
    let inv = denom
        .inverse()
        .map_err(|_| ModelError::NotInvertible { condition: f64::INFINITY })?;
    let condition = condition_number(&denom, &inv);
    if condition > SCHUR_CONDITION_LIMIT {
        return Err(ModelError::NotInvertible { condition });
    }
    Ok(&(fz - a0) * &inv)
}

/// `φ(z)` for a function with `‖A_0‖ < 1` and `‖f(z)‖ ≤ 1`.
pub fn schur_transform(f: &OperatorFunction, z: Complex64) -> Result<ComplexMatrix, ModelError> {
    let fz = f.evaluate(z)?;
    schur_transform_value(&f.initial_coefficient(), &fz)
}

/// `f = (A_0 + φ)(I + A_0* φ)⁻¹`, valid when `A_0` is normal and commutes with
/// every `φ(z)`.
pub fn reconstruct_from_transform(a0: &ComplexMatrix, phi: &FunctionSamples) -> Result<FunctionSamples, ModelError> {
    let a0_norm = operator_norm(a0);
    if a0_norm >= 1.0 {
        return Err(ModelError::HypothesisViolated(format!("‖A0‖ = {a0_norm} is not < 1")));
    }
    if !is_normal(a0, COMMUTATION_TOL) {
        return Err(ModelError::HypothesisViolated("A0 is not normal".into()));
    }
    let identity = ComplexMatrix::identity(a0.dim());
    let a0_adj = a0.adjoint();
    let mut values = Vec::with_capacity(phi.len());
    for p in phi.values() {
        let p_norm = operator_norm(p);
        if p_norm > 1.0 + CONTRACTION_SLACK {
            return Err(ModelError::HypothesisViolated(format!("‖φ(z)‖ = {p_norm} exceeds 1")));
        }
        let defect = commutator_norm(a0, p)?;
        if defect > COMMUTATION_TOL {
            return Err(ModelError::CommutationViolated { defect });
        }
        let denom = &identity + &(&a0_adj * p);
        let inv = denom
            .inverse()
            .map_err(|_| ModelError::NotInvertible { condition: f64::INFINITY })?;
        let condition = condition_number(&denom, &inv);
        if condition > SCHUR_CONDITION_LIMIT {
            return Err(ModelError::NotInvertible { condition });
        }
        values.push(&(a0 + p) * &inv);
    }
    FunctionSamples::new(phi.points().to_vec(), values)
}
