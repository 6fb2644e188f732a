use serde::{Deserialize, Serialize};

use super::{check_bohr, BohrStatus, CheckError, DEFAULT_TOL};
use crate::linalg::{
    abs_operator, hermitian_eigen, is_normal, loewner_leq, operator_norm, psd_inverse, psd_sqrt, ComplexMatrix,
    LoewnerRelation,
};
use crate::models::{OperatorFunction, HYPOTHESIS_TOL};

/// Upper end of the bisection interval.
pub const RADIUS_CAP: f64 = 1.0 - 1e-6;

/// Which radius formula produced the guaranteed radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusBranch {
    /// `λ_min((I + 2|A_0|)⁻¹)`, licensed by `|A_0| ⪰ I/2`.
    InvertibleBranch,
    /// `λ_min(((I − |A_0|)/2)^{1/2})`, always licensed.
    SqrtBranch,
    /// `|A_0| ⪰ I/2` holds only up to tolerance; the larger of both values.
    Max,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleRadius {
    pub radius: f64,
    pub branch: RadiusBranch,
    pub sqrt_radius: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse_radius: Option<f64>,
}

/// Bombieri's radius for a fixed initial coefficient `λ`.
pub fn bombieri_radius(lambda: f64) -> Result<f64, CheckError> {
    if !(0.0..1.0).contains(&lambda) {
        return Err(CheckError::DomainError(format!("lambda = {lambda} not in [0, 1)")));
    }
    Ok(if lambda >= 0.5 {
        1.0 / (1.0 + 2.0 * lambda)
    } else {
        (0.5 * (1.0 - lambda)).sqrt()
    })
}

/// Guaranteed radius for a normal `A_0` with `‖A_0‖ < 1`.
pub fn thm1_admissible_radius(a0: &ComplexMatrix) -> Result<AdmissibleRadius, CheckError> {
    if !is_normal(a0, HYPOTHESIS_TOL) {
        return Err(CheckError::HypothesisViolated("A0 is not normal".into()));
    }
    let norm = operator_norm(a0);
    if norm >= 1.0 {
        return Err(CheckError::HypothesisViolated(format!("‖A0‖ = {norm} is not < 1")));
    }
    radius_from_abs(&abs_operator(a0))
}

/// The radius formulas applied to `P = |A_0|` without checking hypotheses.
/// `‖P‖ = 1` yields a zero square-root radius.
pub fn radius_from_abs(p: &ComplexMatrix) -> Result<AdmissibleRadius, CheckError> {
    let dim = p.dim();
    let identity = ComplexMatrix::identity(dim);
    let half = identity.scale(0.5);

    let defect = (&identity - p).scale(0.5);
    let sqrt_radius = hermitian_eigen(&psd_sqrt(&defect)?)?.min_eigenvalue().max(0.0);

    let verdict = loewner_leq(&half, p, DEFAULT_TOL)?;
    if verdict.relation == LoewnerRelation::NotLessOrEqual {
        return Ok(AdmissibleRadius {
            radius: sqrt_radius,
            branch: RadiusBranch::SqrtBranch,
            sqrt_radius,
            inverse_radius: None,
        });
    }
    let shifted = &identity + &p.scale(2.0);
    let inverse_radius = hermitian_eigen(&psd_inverse(&shifted)?)?.min_eigenvalue();
    let (radius, branch) = match verdict.relation {
        LoewnerRelation::LessOrEqual if inverse_radius >= sqrt_radius => (inverse_radius, RadiusBranch::InvertibleBranch),
        LoewnerRelation::LessOrEqual => (sqrt_radius, RadiusBranch::SqrtBranch),
        _ => (inverse_radius.max(sqrt_radius), RadiusBranch::Max),
    };
    Ok(AdmissibleRadius {
        radius,
        branch,
        sqrt_radius,
        inverse_radius: Some(inverse_radius),
    })
}

/// Bisected boundary between `Holds` and `Violated` for `check_bohr`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRadius {
    /// Midpoint of the final bracket.
    pub radius: f64,
    /// Largest radius seen to hold.
    pub lower: f64,
    /// Smallest radius seen to fail, or the cap.
    pub upper: f64,
    /// `Holds` at `1 − 1e−6`; the radius is reported as the cap.
    pub capped: bool,
    /// False when an `Inconclusive` verdict at the 4096 cap stopped the bisection.
    pub resolved: bool,
}

/// Bisection on `(0, 1 − 1e−6)` until the bracket is at most `tol`.
pub fn empirical_bohr_radius(f: &OperatorFunction, tol: f64) -> Result<EmpiricalRadius, CheckError> {
    if tol.is_nan() || tol < 1e-6 {
        return Err(CheckError::DomainError(format!("bisection tolerance {tol} below 1e-6")));
    }
    let top = check_bohr(f, RADIUS_CAP, DEFAULT_TOL);
    if top.status == BohrStatus::Holds {
        return Ok(EmpiricalRadius {
            radius: RADIUS_CAP,
            lower: RADIUS_CAP,
            upper: RADIUS_CAP,
            capped: true,
            resolved: true,
        });
    }
    let mut lo = 0.0;
    let mut hi = RADIUS_CAP;
    let mut resolved = top.status == BohrStatus::Violated;
    if check_bohr(f, 0.0, DEFAULT_TOL).status != BohrStatus::Holds {
        return Ok(EmpiricalRadius {
            radius: 0.0,
            lower: 0.0,
            upper: 0.0,
            capped: false,
            resolved,
        });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match check_bohr(f, mid, DEFAULT_TOL).status {
            BohrStatus::Holds => lo = mid,
            BohrStatus::Violated => {
                hi = mid;
                resolved = true;
            }
            BohrStatus::Inconclusive => {
                resolved = false;
                break;
            }
        }
    }
    Ok(EmpiricalRadius {
        radius: 0.5 * (lo + hi),
        lower: lo,
        upper: hi,
        capped: false,
        resolved,
    })
}

/// Guaranteed against empirical radius for one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub guaranteed_radius: f64,
    pub empirical_radius: f64,
    pub margin: f64,
    pub branch: RadiusBranch,
    pub capped: bool,
    pub resolved: bool,
    pub bracket: [f64; 2],
}

impl RadiusReport {
    pub fn new(f: &OperatorFunction, tol: f64) -> Result<Self, CheckError> {
        let guaranteed = thm1_admissible_radius(&f.initial_coefficient())?;
        let empirical = empirical_bohr_radius(f, tol)?;
        Ok(Self {
            guaranteed_radius: guaranteed.radius,
            empirical_radius: empirical.radius,
            margin: empirical.radius - guaranteed.radius,
            branch: guaranteed.branch,
            capped: empirical.capped,
            resolved: empirical.resolved,
            bracket: [empirical.lower, empirical.upper],
        })
    }
}
