use num_complex::Complex64;

use super::{check_unitary, CoefficientSeries, ModelError};
use crate::linalg::ComplexMatrix;

/// Largest admissible `|β|`.
pub const HALF_PLANE_BETA_MAX: f64 = 1.0 - 1e-6;

/// `f(z) = A_0 + (I − A_0)·s(z)` with `A_0 = Q diag(d_i) Q*` and the scalar
/// symbol `s(z) = −2tz/(1 − βz)`.
///
/// `Re s < 1` on the disk exactly when `t ≤ (1−|β|²) / (2(1 − Re β))`; see
/// [`HalfPlaneLift::max_symbol_weight`].
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlaneLift {
    basis: ComplexMatrix,
    diag: Vec<f64>,
    t: f64,
    beta: Complex64,
}

impl HalfPlaneLift {
    pub fn new(basis: ComplexMatrix, diag: Vec<f64>, t: f64, beta: Complex64) -> Result<Self, ModelError> {
        if diag.len() != basis.dim() {
            return Err(ModelError::InvalidParameter(format!(
                "{} diagonal entries for a basis of dimension {}",
                diag.len(),
                basis.dim()
            )));
        }
        check_unitary(&basis, "half-plane basis")?;
        if diag.iter().any(|&d| !(0.0..1.0).contains(&d)) {
            return Err(ModelError::InvalidParameter("diagonal of A0 must lie in [0, 1)".into()));
        }
        if !(0.0..=1.0).contains(&t) {
            return Err(ModelError::InvalidParameter(format!("t = {t} must lie in [0, 1]")));
        }
        if beta.norm().is_nan() || beta.norm() > HALF_PLANE_BETA_MAX {
            return Err(ModelError::InvalidParameter(format!(
                "|beta| = {} exceeds 1 - 1e-6",
                beta.norm()
            )));
        }
        Ok(Self { basis, diag, t, beta })
    }

    /// `sup {t : Re s(z) ≤ 1 on the disk}` for this `β`, capped at 1.
    ///
    /// `z/(1−βz)` maps the disk onto a disk whose leftmost real part in the
    /// direction of `β` is `(|β| cos arg β − 1)/(1 − |β|²)`.
    pub fn max_symbol_weight(beta: Complex64) -> f64 {
        let b2 = beta.norm_sqr();
        ((1.0 - b2) / (2.0 * (1.0 - beta.re))).min(1.0)
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn a0(&self) -> ComplexMatrix {
        ComplexMatrix::conjugate_real_diag(&self.basis, &self.diag)
    }

    pub fn symbol(&self, z: Complex64) -> Complex64 {
        -2.0 * self.t * z / (Complex64::new(1.0, 0.0) - self.beta * z)
    }

    /// `s_n = −2t β^{n−1}` for `n ≥ 1`.
    pub fn symbol_coefficient(&self, n: usize) -> Complex64 {
        assert!(n >= 1);
        self.beta.powi(n as i32 - 1) * (-2.0 * self.t)
    }

    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let s = self.symbol(z);
        let values: Vec<Complex64> = self.diag.iter().map(|&d| d + (1.0 - d) * s).collect();
        ComplexMatrix::conjugate_diag(&self.basis, &values)
    }

    pub fn coefficients(&self, n: usize) -> CoefficientSeries {
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(self.a0());
        let mut s_n = Complex64::new(-2.0 * self.t, 0.0);
        for _ in 1..=n {
            let values: Vec<Complex64> = self.diag.iter().map(|&d| (1.0 - d) * s_n).collect();
            coeffs.push(ComplexMatrix::conjugate_diag(&self.basis, &values));
            s_n *= self.beta;
        }
        let gap = self.diag.iter().map(|&d| 1.0 - d).fold(0.0, f64::max);
        let tail = 2.0 * self.t * gap * self.beta.norm().powi(n as i32);
        CoefficientSeries::new(coeffs, tail)
    }

    pub fn coefficient_norm_bound(&self) -> f64 {
        let gap = self.diag.iter().map(|&d| 1.0 - d).fold(0.0, f64::max);
        let d_max = self.diag.iter().cloned().fold(0.0, f64::max);
        d_max.max(2.0 * self.t * gap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn extremal_instance_coefficients() {
        // d = 0.5, t = 1, β ≈ 1: A_n = (1 − 0.5)(−2)β^{n−1} ≈ −1
        let f = HalfPlaneLift::new(ComplexMatrix::identity(1), vec![0.5], 1.0, c(HALF_PLANE_BETA_MAX)).unwrap();
        let s = f.coefficients(2);
        assert!((s.coeffs[0][(0, 0)] - c(0.5)).norm() < 1e-15);
        assert!((s.coeffs[1][(0, 0)] - c(-1.0)).norm() < 1e-15);
        assert!((s.coeffs[2][(0, 0)] - c(-HALF_PLANE_BETA_MAX)).norm() < 1e-15);
    }

    #[test]
    fn zero_weight_is_constant() {
        let f = HalfPlaneLift::new(ComplexMatrix::identity(2), vec![0.2, 0.7], 0.0, c(0.3)).unwrap();
        let v = f.evaluate(Complex64::new(0.5, 0.5));
        assert!((&v - &f.a0()).frobenius_norm() < 1e-16);
        assert_eq!(f.coefficients(4).tail_norm_bound, 0.0);
    }

    #[test]
    fn weight_limit_matches_real_beta_formula() {
        for b in [0.0, 0.3, 0.9] {
            assert!((HalfPlaneLift::max_symbol_weight(c(b)) - (1.0 + b) / 2.0).abs() < 1e-15);
        }
        // rotated β: limit shrinks
        assert!(HalfPlaneLift::max_symbol_weight(c(-0.5)) < 0.5);
    }

    #[test]
    fn real_part_of_symbol_respects_weight_limit() {
        let beta = Complex64::from_polar(0.8, 2.0);
        let t = HalfPlaneLift::max_symbol_weight(beta);
        let f = HalfPlaneLift::new(ComplexMatrix::identity(1), vec![0.0], t, beta).unwrap();
        let sup = (0..4096)
            .map(|k| f.symbol(Complex64::from_polar(1.0 - 1e-9, k as f64 * std::f64::consts::TAU / 4096.0)).re)
            .fold(f64::MIN, f64::max);
        assert!(sup <= 1.0 + 1e-9, "{sup}");
        assert!(sup > 0.999, "{sup}");
    }

    #[test]
    fn rejects_out_of_range() {
        let q = ComplexMatrix::identity(1);
        assert!(HalfPlaneLift::new(q.clone(), vec![1.0], 0.5, c(0.0)).is_err());
        assert!(HalfPlaneLift::new(q.clone(), vec![0.5], 1.5, c(0.0)).is_err());
        assert!(HalfPlaneLift::new(q, vec![0.5], 0.5, c(1.0)).is_err());
    }
}
