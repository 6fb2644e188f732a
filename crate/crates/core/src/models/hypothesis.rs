use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::OperatorFunction;
use crate::linalg::{commutator_norm, hermitian_eigen, is_normal, normality_defect, operator_norm, ComplexMatrix};

pub const HYPOTHESIS_TOL: f64 = 1e-8;
pub const HYPOTHESIS_GRID_RADIUS: f64 = 0.999;
pub const HYPOTHESIS_GRID_POINTS: usize = 32;
/// Coefficients `A_1 … A_32` are tested for commutation with `A_0`.
pub const COMMUTATOR_DEPTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisClass {
    /// `A_0` normal, commuting with every `A_n`, `‖f(z)‖ < 1`.
    Thm1,
    /// `Re f(z) ⪯ I`, `f(z)` normal, `A_0 ⪰ 0`, `‖A_0‖ < 1`, commuting coefficients.
    Thm2,
    /// `A_0 = a_0 I`, `‖f(z)‖ < 1`.
    Cor2,
    /// `‖f(z)‖ ≤ 1` only.
    Schur,
}

impl HypothesisClass {
    pub fn as_str(self) -> &'static str {
        match self {
            HypothesisClass::Thm1 => "thm1",
            HypothesisClass::Thm2 => "thm2",
            HypothesisClass::Cor2 => "cor2",
            HypothesisClass::Schur => "schur",
        }
    }
}

/// Numerical evidence for a hypothesis list. Report-only: `failures` names
/// every hypothesis that did not pass at threshold `1e−8`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub class: HypothesisClass,
    pub a0_normality_defect: f64,
    pub a0_norm: f64,
    pub max_commutator: f64,
    /// `max ‖f(z_j)‖` (norm classes) or `max λ_max(Re f(z_j) − I)` (Thm2).
    pub grid_extreme: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_value_normality_defect: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_min_eigenvalue: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar_defect: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a0_trace_mean: Option<[f64; 2]>,
    pub failures: Vec<String>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn hypothesis_grid() -> Vec<Complex64> {
    (0..HYPOTHESIS_GRID_POINTS)
        .map(|j| {
            Complex64::from_polar(
                HYPOTHESIS_GRID_RADIUS,
                std::f64::consts::TAU * j as f64 / HYPOTHESIS_GRID_POINTS as f64,
            )
        })
        .collect()
}

pub fn hypothesis_check(f: &OperatorFunction, class: HypothesisClass) -> HypothesisReport {
    let series = f.coefficients(COMMUTATOR_DEPTH);
    let a0 = &series.coeffs[0];
    let dim = a0.dim();
    let mut failures = Vec::new();

    let a0_normality_defect = normality_defect(a0);
    let a0_norm = operator_norm(a0);
    let max_commutator = series.coeffs[1..]
        .iter()
        .map(|a| commutator_norm(a0, a).expect("shared dimension"))
        .fold(0.0, f64::max);
    let grid: Vec<ComplexMatrix> = hypothesis_grid().into_iter().map(|z| f.evaluate_unchecked(z)).collect();

    let needs_structure = matches!(class, HypothesisClass::Thm1 | HypothesisClass::Thm2);
    if needs_structure {
        if !is_normal(a0, HYPOTHESIS_TOL) {
            failures.push(format!("A0 is not normal (defect {a0_normality_defect:e})"));
        }
        if max_commutator > HYPOTHESIS_TOL {
            failures.push(format!("A0 does not commute with A_n (max defect {max_commutator:e})"));
        }
    }
    if class != HypothesisClass::Schur && a0_norm >= 1.0 {
        failures.push(format!("‖A0‖ = {a0_norm} is not < 1"));
    }

    let mut report = HypothesisReport {
        class,
        a0_normality_defect,
        a0_norm,
        max_commutator,
        grid_extreme: 0.0,
        max_value_normality_defect: None,
        a0_min_eigenvalue: None,
        scalar_defect: None,
        a0_trace_mean: None,
        failures: Vec::new(),
    };

    match class {
        HypothesisClass::Thm1 | HypothesisClass::Cor2 | HypothesisClass::Schur => {
            let max_norm = grid.iter().map(operator_norm).fold(0.0, f64::max);
            report.grid_extreme = max_norm;
            if max_norm > 1.0 + HYPOTHESIS_TOL {
                failures.push(format!(
                    "‖f(z)‖ reaches {max_norm} on the |z| = {HYPOTHESIS_GRID_RADIUS} grid"
                ));
            }
        }
        HypothesisClass::Thm2 => {
            let identity = ComplexMatrix::identity(dim);
            let mut worst_re = f64::MIN;
            let mut worst_normal = 0.0f64;
            for v in &grid {
                let re_minus_i = &v.hermitian_part() - &identity;
                let top = hermitian_eigen(&re_minus_i).expect("Hermitian part").max_eigenvalue();
                worst_re = worst_re.max(top);
                worst_normal = worst_normal.max(normality_defect(v));
            }
            report.grid_extreme = worst_re;
            report.max_value_normality_defect = Some(worst_normal);
            if worst_re > HYPOTHESIS_TOL {
                failures.push(format!("Re f(z) - I reaches {worst_re:e} on the grid"));
            }
            if grid.iter().any(|v| !is_normal(v, HYPOTHESIS_TOL)) {
                failures.push(format!("f(z) is not normal on the grid (defect {worst_normal:e})"));
            }
            let herm_defect = a0.hermitian_defect();
            let lmin = hermitian_eigen(&a0.hermitian_part()).expect("Hermitian part").min_eigenvalue();
            report.a0_min_eigenvalue = Some(lmin);
            if herm_defect > HYPOTHESIS_TOL || lmin < -HYPOTHESIS_TOL {
                failures.push(format!(
                    "A0 is not positive semidefinite (min eigenvalue {lmin:e}, Hermitian defect {herm_defect:e})"
                ));
            }
        }
    }

    if class == HypothesisClass::Cor2 {
        let mean = a0.trace() / dim as f64;
        let defect = (a0 - &ComplexMatrix::scalar(dim, mean)).frobenius_norm();
        report.scalar_defect = Some(defect);
        report.a0_trace_mean = Some([mean.re, mean.im]);
        if defect > HYPOTHESIS_TOL {
            failures.push(format!("A0 is not a scalar multiple of I (defect {defect:e})"));
        }
    }

    report.failures = failures;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{generate_thm1_instance, MobiusOverrides, Polynomial};

    #[test]
    fn mobius_instances_pass_thm1() {
        for seed in 0..5 {
            let f = generate_thm1_instance(4, 1..=3, seed, &MobiusOverrides::default()).unwrap();
            let r = hypothesis_check(&f, HypothesisClass::Thm1);
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.max_commutator <= 1e-10);
        }
    }

    #[test]
    fn identity_map_is_cor2_with_zero_a0() {
        let f: OperatorFunction = Polynomial::new(vec![ComplexMatrix::zeros(2), ComplexMatrix::identity(2)])
            .unwrap()
            .into();
        let r = hypothesis_check(&f, HypothesisClass::Cor2);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.a0_trace_mean, Some([0.0, 0.0]));
    }

    #[test]
    fn nilpotent_a0_fails_normality() {
        let a0 = ComplexMatrix::from_real_rows(&[&[0.0, 0.5], &[0.0, 0.0]]).unwrap();
        let f: OperatorFunction = Polynomial::new(vec![a0]).unwrap().into();
        let r = hypothesis_check(&f, HypothesisClass::Thm1);
        assert!(!r.passed());
        assert!(r.failures.iter().any(|m| m.contains("not normal")));
    }
}
