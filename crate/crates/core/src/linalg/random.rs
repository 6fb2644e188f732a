//! Seeded random matrices.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian (`E|z|² = 1`).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Ginibre matrix with i.i.d. standard complex Gaussian entries.
pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let entries = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_row_major(dim, entries).expect("finite Gaussian samples")
}

/// Haar-distributed unitary, deterministic in `seed`.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = seeded_rng(seed);
    random_unitary_with(dim, &mut rng)
}

/// QR of a Ginibre matrix by twice-iterated Gram–Schmidt. The diagonal of R
/// comes out real positive, which fixes the phase ambiguity of the factor.
pub fn random_unitary_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    assert!(dim >= 1, "dimension must be positive");
    loop {
        let g = ginibre(dim, rng);
        if let Some(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

fn orthonormalize_columns(g: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = g.dim();
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for u in &cols {
                let proj: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= proj * ui;
                }
            }
        }
        let norm = super::matrix::vec_norm(&v);
        if norm < 1e-8 {
            return None;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut q = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            q[(i, j)] = z;
        }
    }
    Some(q)
}

/// Uniform sample from the closed disk of radius `radius`.
pub fn uniform_disk<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> Complex64 {
    let rho = radius * rng.random::<f64>().sqrt();
    let theta = std::f64::consts::TAU * rng.random::<f64>();
    Complex64::from_polar(rho, theta)
}

pub fn unimodular<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * rng.random::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operator_norm;

    #[test]
    fn unitary_dim_one_is_a_phase() {
        let u = random_unitary(1, 42);
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn unitarity_and_norm() {
        for dim in 1..=12 {
            let u = random_unitary(dim, dim as u64);
            let defect = (&(&u.adjoint() * &u) - &ComplexMatrix::identity(dim)).frobenius_norm();
            assert!(defect < 1e-10, "dim {dim}: {defect}");
            assert!((operator_norm(&u) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn same_seed_is_bitwise_identical() {
        let a = random_unitary(6, 1234);
        let b = random_unitary(6, 1234);
        assert_eq!(a.entries(), b.entries());
        assert_ne!(a.entries(), random_unitary(6, 1235).entries());
    }

    #[test]
    fn disk_samples_stay_inside() {
        let mut rng = seeded_rng(0);
        for _ in 0..1000 {
            assert!(uniform_disk(&mut rng, 0.999).norm() <= 0.999);
        }
    }
}
