use serde::{Deserialize, Serialize};

use crate::linalg::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    /// Every coefficient beyond the stored ones is zero.
    Exact,
    /// Coefficients beyond the stored ones are bounded in norm by `tail_norm_bound`.
    Bounded,
}

/// Taylor coefficients `A_0 … A_N` plus a bound `c` with `‖A_n‖ ≤ c` for `n > N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub coeffs: Vec<ComplexMatrix>,
    pub tail_norm_bound: f64,
    pub exactness: Exactness,
}

impl CoefficientSeries {
    pub fn new(coeffs: Vec<ComplexMatrix>, tail_norm_bound: f64) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least A_0");
        let dim = coeffs[0].dim();
        assert!(coeffs.iter().all(|c| c.dim() == dim), "coefficients must share one dimension");
        assert!(
            tail_norm_bound.is_finite() && tail_norm_bound >= 0.0,
            "tail bound must be finite and non-negative"
        );
        let exactness = if tail_norm_bound == 0.0 {
            Exactness::Exact
        } else {
            Exactness::Bounded
        };
        Self {
            coeffs,
            tail_norm_bound,
            exactness,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs[0].dim()
    }

    /// Highest stored index `N`.
    pub fn last_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }

    /// `(A_0, A_n, A_{2n}, …)`: the coefficients of `F(z) = A_0 + A_n z + A_{2n} z² + …`,
    /// i.e. of the root-of-unity average `(1/n)Σ_k f(w^k z)` with `z^n ↦ z`.
    pub fn decimate(&self, n: usize) -> CoefficientSeries {
        assert!(n >= 2, "decimation factor must be at least 2");
        let coeffs = self.coeffs.iter().step_by(n).cloned().collect();
        CoefficientSeries {
            coeffs,
            tail_norm_bound: self.tail_norm_bound,
            exactness: self.exactness,
        }
    }

    /// Truncates to `A_0 … A_n`, folding the dropped norms into the tail bound.
    pub fn truncate(&self, n: usize) -> CoefficientSeries {
        if n >= self.last_index() {
            return self.clone();
        }
        let dropped = self.coeffs[n + 1..]
            .iter()
            .map(crate::linalg::operator_norm)
            .fold(self.tail_norm_bound, f64::max);
        CoefficientSeries::new(self.coeffs[..=n].to_vec(), dropped)
    }
}
