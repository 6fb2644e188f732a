//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `h_pq` with a diagonal
//! unitary, then applies the real symmetric Jacobi rotation that annihilates
//! the (now real) off-diagonal entry. The accumulated product of rotations is
//! the eigenvector basis.

use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use super::LinalgError;

/// Relative off-diagonal Frobenius mass at which a sweep loop stops.
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 64;
/// Relative Hermitian defect accepted by [`hermitian_eigen`].
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary; column `k` is the eigenvector of `eigenvalues[k]`.
    pub basis: ComplexMatrix,
}

impl EigenDecomposition {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("dim >= 1")
    }

    /// `basis · diag(g(λ)) · basis*`.
    pub fn map(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        ComplexMatrix::conjugate_real_diag(&self.basis, &values)
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|l| l)
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Rejects inputs whose Hermitian defect exceeds `1e-12·(1+‖H‖_F)`; the
/// Hermitian part of the input is decomposed otherwise.
pub fn hermitian_eigen(h: &ComplexMatrix) -> Result<EigenDecomposition, LinalgError> {
    let norm = h.frobenius_norm();
    let defect = h.hermitian_defect();
    if defect > HERMITIAN_TOL * (1.0 + norm) {
        return Err(LinalgError::NotHermitian { defect });
    }

    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = JACOBI_OFF_DIAGONAL_TOL * (1.0 + norm);

    let mut converged = off_diagonal_norm(&a) <= threshold;
    let mut sweeps = 0;
    while !converged && sweeps < JACOBI_MAX_SWEEPS {
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a) <= threshold;
    }
    if !converged {
        return Err(LinalgError::NoConvergence { sweeps });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut basis = ComplexMatrix::zeros(n);
    for (new, &old) in order.iter().enumerate() {
        for row in 0..n {
            basis[(row, new)] = v[(row, old)];
        }
    }
    Ok(EigenDecomposition { eigenvalues, basis })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // Skip pivots already negligible against both diagonal entries.
    if b <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }

    let tau = (aqq - app) / (2.0 * b);
    let t = if tau.is_finite() {
        tau.signum() / (tau.abs() + tau.hypot(1.0))
    } else {
        0.0
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let phase = (apq / b).conj();

    // G acts on columns p and q: G = [[c, s], [-s·phase, c·phase]].
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}
