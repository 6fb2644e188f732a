use num_complex::Complex64;

use super::{check_unitary, CoefficientSeries, ModelError};
use crate::linalg::{hermitian_eigen, ComplexMatrix};

/// Transfer function `f(z) = D + zC(I − zA)⁻¹B` of a unitary colligation
/// `[[A, B], [C, D]]` with state space of dimension `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferRealization {
    state_dim: usize,
    colligation: ComplexMatrix,
}

/// Rectangular block, row-major.
#[derive(Debug, Clone)]
struct Block {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Block {
    fn cut(m: &ComplexMatrix, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in rows.clone() {
            for j in cols.clone() {
                data.push(m[(i, j)]);
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    fn mul(&self, rhs: &Block) -> Block {
        assert_eq!(self.cols, rhs.rows);
        let mut data = vec![Complex64::new(0.0, 0.0); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                for j in 0..rhs.cols {
                    data[i * rhs.cols + j] += a * rhs.at(k, j);
                }
            }
        }
        Block {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    fn from_square(m: &ComplexMatrix) -> Block {
        let n = m.dim();
        Block::cut(m, 0..n, 0..n)
    }

    fn into_square(self) -> ComplexMatrix {
        assert_eq!(self.rows, self.cols);
        ComplexMatrix::from_row_major(self.rows, self.data).expect("finite block")
    }

    fn adjoint(&self) -> Block {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.at(i, j).conj());
            }
        }
        Block {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    fn norm(&self) -> f64 {
        // ‖X‖² = λ_max of the smaller Gram matrix
        let gram = if self.rows <= self.cols {
            self.mul(&self.adjoint())
        } else {
            self.adjoint().mul(self)
        };
        let eig = hermitian_eigen(&gram.into_square()).expect("Gram matrix is Hermitian");
        eig.max_eigenvalue().max(0.0).sqrt()
    }
}

impl TransferRealization {
    pub fn new(state_dim: usize, colligation: ComplexMatrix) -> Result<Self, ModelError> {
        if state_dim == 0 || state_dim >= colligation.dim() {
            return Err(ModelError::InvalidParameter(format!(
                "state dimension {state_dim} must lie in 1..{}",
                colligation.dim()
            )));
        }
        check_unitary(&colligation, "colligation")?;
        Ok(Self {
            state_dim,
            colligation,
        })
    }

    pub fn dim(&self) -> usize {
        self.colligation.dim() - self.state_dim
    }

    pub fn state_dim(&self) -> usize {
        self.state_dim
    }

    pub fn colligation(&self) -> &ComplexMatrix {
        &self.colligation
    }

    fn blocks(&self) -> (ComplexMatrix, Block, Block, ComplexMatrix) {
        let s = self.state_dim;
        let total = self.colligation.dim();
        let a = Block::cut(&self.colligation, 0..s, 0..s).into_square();
        let b = Block::cut(&self.colligation, 0..s, s..total);
        let c = Block::cut(&self.colligation, s..total, 0..s);
        let d = Block::cut(&self.colligation, s..total, s..total).into_square();
        (a, b, c, d)
    }

    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let (a, b, c, d) = self.blocks();
        let resolvent = (&ComplexMatrix::identity(a.dim()) - &a.scale_complex(z))
            .inverse()
            .expect("‖zA‖ < 1 on the open disk");
        let x = Block::from_square(&resolvent).mul(&b);
        let correction = c.mul(&x).into_square().scale_complex(z);
        &d + &correction
    }

    /// Neumann expansion: `A_0 = D`, `A_n = C A^{n−1} B`; the tail bound is
    /// `‖C‖·‖A‖^N·‖B‖`, capped at 1.
    pub fn coefficients(&self, n: usize) -> CoefficientSeries {
        let (a, b, c, d) = self.blocks();
        let a_block = Block::from_square(&a);
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(d);
        let mut w = b.clone();
        for _ in 1..=n {
            coeffs.push(c.mul(&w).into_square());
            w = a_block.mul(&w);
        }
        let a_norm = a_block.norm();
        let tail = (c.norm() * a_norm.powi(n as i32) * b.norm()).min(1.0);
        CoefficientSeries::new(coeffs, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{operator_norm, random_unitary};

    fn swap() -> TransferRealization {
        let u = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        TransferRealization::new(1, u).unwrap()
    }

    #[test]
    fn swap_colligation_is_identity_map() {
        let f = swap();
        let z = Complex64::new(0.3, -0.2);
        assert!((f.evaluate(z)[(0, 0)] - z).norm() < 1e-15);
    }

    #[test]
    fn swap_coefficients_are_exact() {
        let s = swap().coefficients(3);
        let got: Vec<f64> = s.coeffs.iter().map(|m| m[(0, 0)].re).collect();
        assert_eq!(got, vec![0.0, 1.0, 0.0, 0.0]);
        assert_eq!(s.tail_norm_bound, 0.0);
        assert!(s.is_exact());
    }

    #[test]
    fn random_realization_is_contractive() {
        let f = TransferRealization::new(3, random_unitary(5, 17)).unwrap();
        for k in 0..16 {
            let z = Complex64::from_polar(0.999, k as f64 * 0.4);
            assert!(operator_norm(&f.evaluate(z)) <= 1.0 + 1e-10);
        }
        for a in f.coefficients(10).coeffs {
            assert!(operator_norm(&a) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary_colligation() {
        let m = ComplexMatrix::from_real_diag(&[1.0, 0.5]);
        assert!(TransferRealization::new(1, m).is_err());
        assert!(TransferRealization::new(0, ComplexMatrix::identity(2)).is_err());
    }
}
