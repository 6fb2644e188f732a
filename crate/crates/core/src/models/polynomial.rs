use num_complex::Complex64;

use super::{CoefficientSeries, ModelError};
use crate::linalg::{operator_norm, ComplexMatrix};

/// `f(z) = Σ_{n≤d} A_n z^n` with explicitly stored coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<ComplexMatrix>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<ComplexMatrix>) -> Result<Self, ModelError> {
        let first = coeffs
            .first()
            .ok_or_else(|| ModelError::InvalidParameter("polynomial needs at least one coefficient".into()))?;
        let dim = first.dim();
        if coeffs.iter().any(|c| c.dim() != dim) {
            return Err(ModelError::InvalidParameter("polynomial coefficients differ in dimension".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexMatrix] {
        &self.coeffs
    }

    /// Horner evaluation; valid on the closed disk and beyond.
    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let mut acc = self.coeffs.last().expect("non-empty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &acc.scale_complex(z) + c;
        }
        acc
    }

    pub fn coefficients(&self, n: usize) -> CoefficientSeries {
        if n >= self.degree() {
            return CoefficientSeries::new(self.coeffs.clone(), 0.0);
        }
        let tail = self.coeffs[n + 1..].iter().map(operator_norm).fold(0.0, f64::max);
        CoefficientSeries::new(self.coeffs[..=n].to_vec(), tail)
    }

    pub fn max_coefficient_norm(&self) -> f64 {
        self.coeffs.iter().map(operator_norm).fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }
}
