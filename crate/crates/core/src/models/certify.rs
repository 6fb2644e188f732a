use num_complex::Complex64;
use serde::Serialize;

use super::{ModelError, Polynomial};
use crate::linalg::operator_norm;

/// Certified bound on `sup_{|z|=1} ‖p(z)‖` for a polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct SchurCertificate {
    pub grid_size: usize,
    pub grid_max: f64,
    pub certified_bound: f64,
}

/// Samples `‖p‖` on `M = 64(d+1)` points of the unit circle and bounds the
/// supremum by `grid_max / (1 − πd/M)`.
///
/// Bernstein's inequality `‖p'‖_∞ ≤ d‖p‖_∞` holds for Banach-valued
/// trigonometric polynomials, and every point of the circle lies within
/// `π/M` of a grid point. Succeeds iff the bound is `≤ 1 − margin`.
pub fn certify_schur_bound(p: &Polynomial, margin: f64) -> Result<SchurCertificate, ModelError> {
    let cert = sup_norm_certificate(p);
    if cert.certified_bound > 1.0 - margin {
        let point = worst_grid_point(p, cert.grid_size);
        return Err(ModelError::BoundExceeded {
            bound: cert.certified_bound,
            point,
        });
    }
    Ok(cert)
}

/// The certificate without a pass/fail threshold.
pub fn sup_norm_certificate(p: &Polynomial) -> SchurCertificate {
    let d = p.degree();
    let grid_size = 64 * (d + 1);
    let grid_max = grid(grid_size)
        .map(|z| operator_norm(&p.evaluate(z)))
        .fold(0.0, f64::max);
    let slack = std::f64::consts::PI * d as f64 / grid_size as f64;
    SchurCertificate {
        grid_size,
        grid_max,
        certified_bound: grid_max / (1.0 - slack),
    }
}

fn grid(m: usize) -> impl Iterator<Item = Complex64> {
    (0..m).map(move |j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64))
}

fn worst_grid_point(p: &Polynomial, m: usize) -> Complex64 {
    grid(m)
        .map(|z| (z, operator_norm(&p.evaluate(z))))
        .fold((Complex64::new(1.0, 0.0), f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc })
        .0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;

    #[test]
    fn scaled_identity_map() {
        let p = Polynomial::new(vec![ComplexMatrix::zeros(2), ComplexMatrix::scalar(2, 0.9.into())]).unwrap();
        let cert = certify_schur_bound(&p, 0.05).unwrap();
        assert!((cert.grid_max - 0.9).abs() < 1e-14);
        assert!(cert.certified_bound > 0.9 && cert.certified_bound < 0.95);
    }

    #[test]
    fn constant_has_no_slack() {
        let p = Polynomial::new(vec![ComplexMatrix::scalar(3, 0.5.into())]).unwrap();
        let cert = certify_schur_bound(&p, 0.1).unwrap();
        assert!((cert.certified_bound - 0.5).abs() < 1e-15);
    }

    #[test]
    fn touching_polynomial_fails_at_z_equal_one() {
        let p = Polynomial::new(vec![ComplexMatrix::scalar(1, 0.5.into()), ComplexMatrix::scalar(1, 0.5.into())])
            .unwrap();
        match certify_schur_bound(&p, 1e-6) {
            Err(ModelError::BoundExceeded { bound, point }) => {
                assert!(bound > 1.0);
                assert!((point - Complex64::new(1.0, 0.0)).norm() < 1e-15);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
