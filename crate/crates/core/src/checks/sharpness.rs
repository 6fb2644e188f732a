use serde::{Deserialize, Serialize};

use super::{bombieri_radius, empirical_bohr_radius, majorant_value, CheckError};
use crate::models::scalar_mobius;

pub const SHARPNESS_DELTA: f64 = 1e-3;
/// Agreement required between the empirical and guaranteed radius.
const RADIUS_AGREEMENT: f64 = 1e-5;
const BISECTION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SharpnessRow {
    pub lambda: f64,
    pub guaranteed: f64,
    pub empirical: f64,
    /// Majorant of the witness at `guaranteed + δ`.
    pub majorant_beyond: f64,
    pub delta: f64,
    /// Empirical radius within `1e−5` of the guarantee and `majorant_beyond > 1`.
    pub confirmed: bool,
}

/// For each `λ ∈ [1/2, 1 − 1e−3]`, compares the radius `1/(1+2λ)` with the
/// bisected radius of the witness `(λ − z)/(1 − λz)`.
pub fn sharpness_scan(lambdas: &[f64], delta: f64) -> Result<Vec<SharpnessRow>, CheckError> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(CheckError::DomainError(format!("delta = {delta} must be positive")));
    }
    lambdas
        .iter()
        .map(|&lambda| {
            if !(0.5..=1.0 - 1e-3).contains(&lambda) {
                return Err(CheckError::DomainError(format!("lambda = {lambda} not in [0.5, 0.999]")));
            }
            let witness = scalar_mobius(lambda);
            let guaranteed = bombieri_radius(lambda)?;
            let empirical = empirical_bohr_radius(&witness, BISECTION_TOL)?;
            let beyond = guaranteed + delta;
            if beyond >= 1.0 {
                return Err(CheckError::DomainError(format!("guaranteed + delta = {beyond} reaches 1")));
            }
            let (majorant_beyond, _) = majorant_value(&witness, beyond);
            Ok(SharpnessRow {
                lambda,
                guaranteed,
                empirical: empirical.radius,
                majorant_beyond,
                delta,
                confirmed: empirical.resolved
                    && (empirical.radius - guaranteed).abs() <= RADIUS_AGREEMENT
                    && majorant_beyond > 1.0,
            })
        })
        .collect()
}
