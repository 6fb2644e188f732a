//! Functional calculus on top of the Hermitian eigensolver.

use super::eigen::{hermitian_eigen, EigenDecomposition};
use super::matrix::{check_dims, vec_norm, ComplexMatrix};
use super::LinalgError;

/// Eigenvalues of a PSD input at or below `PSD_CLAMP_REL·λ_max` are set to zero.
pub const PSD_CLAMP_REL: f64 = 1e-12;
/// Most negative relative eigenvalue accepted as PSD roundoff.
pub const PSD_NEGATIVE_TOL: f64 = 1e-10;
/// Singular values at or below `SINGULAR_CLAMP_REL·σ_max` are reported as zero.
pub const SINGULAR_CLAMP_REL: f64 = 1e-14;

/// The absolute value `|A| = (A*A)^{1/2}`.
///
/// With `A*A = V Λ V*`, the singular values are taken as `‖A v_k‖` rather than
/// `√λ_k`; this keeps small singular values accurate to working precision
/// instead of to its square root.
pub fn abs_operator(a: &ComplexMatrix) -> ComplexMatrix {
    let gram = &a.adjoint() * a;
    let eig = hermitian_eigen(&gram).expect("A*A is Hermitian to rounding");
    let av = a * &eig.basis;
    let mut sigma: Vec<f64> = (0..a.dim()).map(|k| vec_norm(&av.column(k))).collect();
    let sigma_max = sigma.iter().cloned().fold(0.0, f64::max);
    for s in &mut sigma {
        if *s <= SINGULAR_CLAMP_REL * sigma_max {
            *s = 0.0;
        }
    }
    ComplexMatrix::conjugate_real_diag(&eig.basis, &sigma).hermitian_part()
}

/// Principal square root of a positive semidefinite matrix.
pub fn psd_sqrt(p: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    psd_power(p, 0.5)
}

/// `P^{exponent}` for PSD `P` and `exponent > 0`, via the eigenbasis.
pub fn psd_power(p: &ComplexMatrix, exponent: f64) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eigen(p)?;
    let clamped = clamp_psd(&eig)?;
    let values: Vec<f64> = clamped.iter().map(|&l| l.powf(exponent)).collect();
    Ok(ComplexMatrix::conjugate_real_diag(&eig.basis, &values).hermitian_part())
}

/// Inverse of a positive definite matrix through its eigenbasis.
pub fn psd_inverse(p: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let eig = hermitian_eigen(p)?;
    let lmax = eig.max_eigenvalue();
    if eig.min_eigenvalue() <= PSD_CLAMP_REL * lmax.max(f64::MIN_POSITIVE) {
        return Err(LinalgError::Singular);
    }
    Ok(eig.map(|l| 1.0 / l).hermitian_part())
}

fn clamp_psd(eig: &EigenDecomposition) -> Result<Vec<f64>, LinalgError> {
    let lmin = eig.min_eigenvalue();
    let lmax = eig.max_eigenvalue();
    if lmin < -PSD_NEGATIVE_TOL * (1.0 + lmax.max(0.0)) {
        return Err(LinalgError::NotPsd { min_eigenvalue: lmin });
    }
    let floor = PSD_CLAMP_REL * lmax.max(0.0);
    Ok(eig
        .eigenvalues
        .iter()
        .map(|&l| if l < floor { 0.0 } else { l })
        .collect())
}

/// Spectral norm `σ_max(A)`.
pub fn operator_norm(a: &ComplexMatrix) -> f64 {
    let gram = &a.adjoint() * a;
    let eig = hermitian_eigen(&gram).expect("A*A is Hermitian to rounding");
    let av = a * &eig.basis;
    // Top singular value from the top eigenvector, checked against λ_max.
    let top = vec_norm(&av.column(a.dim() - 1));
    top.max(eig.max_eigenvalue().max(0.0).sqrt())
}

/// `‖AB − BA‖_F`.
pub fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, LinalgError> {
    check_dims(a, b)?;
    Ok((&(a * b) - &(b * a)).frobenius_norm())
}

/// `‖A*A − AA*‖_F`.
pub fn normality_defect(a: &ComplexMatrix) -> f64 {
    let ah = a.adjoint();
    (&(&ah * a) - &(a * &ah)).frobenius_norm()
}

/// True iff `‖A*A − AA*‖_F ≤ tol·(1+‖A‖_F²)`.
pub fn is_normal(a: &ComplexMatrix, tol: f64) -> bool {
    let f = a.frobenius_norm();
    normality_defect(a) <= tol * (1.0 + f * f)
}
