use super::{check_radius, check_series, require_hypotheses, BohrVerdict, CheckError, SeriesTerm};
use crate::linalg::ComplexMatrix;
use crate::models::{HypothesisClass, OperatorFunction};

pub const COR2_R_MIN: f64 = 1.0 / 3.0;
pub const COR2_R_MAX: f64 = std::f64::consts::FRAC_1_SQRT_2;
const EDGE_SLACK: f64 = 1e-12;

fn check_cor2_radius(r: f64) -> Result<(), CheckError> {
    if !(COR2_R_MIN - EDGE_SLACK..=COR2_R_MAX + EDGE_SLACK).contains(&r) {
        return Err(CheckError::DomainError(format!("r = {r} not in [1/3, 1/sqrt 2]")));
    }
    Ok(())
}

fn check_unit_interval(x: f64, what: &str) -> Result<(), CheckError> {
    if !(0.0..1.0).contains(&x) {
        return Err(CheckError::DomainError(format!("{what} = {x} not in [0, 1)")));
    }
    Ok(())
}

/// `(3 − √(8(1−r²)))/r` on `[1/3, 1/√2]`.
pub fn cor2_rhs(r: f64) -> Result<f64, CheckError> {
    check_cor2_radius(r)?;
    Ok((3.0 - (8.0 * (1.0 - r * r)).sqrt()) / r)
}

/// `χ(x) = x + r√(1−x²)/√(1−r²)`.
pub fn chi(x: f64, r: f64) -> Result<f64, CheckError> {
    check_unit_interval(x, "x")?;
    check_unit_interval(r, "r")?;
    Ok(x + r * (1.0 - x * x).sqrt() / (1.0 - r * r).sqrt())
}

/// `ξ(x) = x + r(1−x²)/(1−rx)`: the majorant of the scalar Möbius map with
/// initial coefficient `x`.
pub fn xi(x: f64, r: f64) -> Result<f64, CheckError> {
    check_unit_interval(x, "x")?;
    check_unit_interval(r, "r")?;
    Ok(x + r * (1.0 - x * x) / (1.0 - r * x))
}

/// `x_0 = (1/r)(1 − √((1−r²)/2))`, where `ξ` peaks.
pub fn xi_argmax(r: f64) -> Result<f64, CheckError> {
    check_cor2_radius(r)?;
    Ok((1.0 - (0.5 * (1.0 - r * r)).sqrt()) / r)
}

/// `|a_0|I + Σ_{n≥1} |A_n| rⁿ ⪯ cor2_rhs(r)·I` for `A_0 = a_0 I`.
pub fn check_cor2(f: &OperatorFunction, r: f64, tol: f64) -> Result<BohrVerdict, CheckError> {
    require_hypotheses(f, HypothesisClass::Cor2)?;
    let rhs = ComplexMatrix::identity(f.dim()).scale(cor2_rhs(r)?);
    Ok(check_series(f, r, 0, SeriesTerm::Abs, &rhs, tol).with_step("cor2"))
}

/// `Σ_{n≥0} |A_n| rⁿ ⪯ (1−r²)^{−1/2} I`.
pub fn check_bb2_norm_bound(f: &OperatorFunction, r: f64, tol: f64) -> Result<BohrVerdict, CheckError> {
    check_radius(r)?;
    let rhs = ComplexMatrix::identity(f.dim()).scale(1.0 / (1.0 - r * r).sqrt());
    Ok(check_series(f, r, 0, SeriesTerm::Abs, &rhs, tol).with_step("bb2_remark"))
}
