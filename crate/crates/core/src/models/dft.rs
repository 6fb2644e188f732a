use num_complex::Complex64;
use serde::Serialize;

use super::{CoefficientSeries, ModelError};
use crate::linalg::{operator_norm, ComplexMatrix};

/// Coefficients recovered from samples, with a per-coefficient error bound
/// `‖Â_n − A_n‖ ≤ error_bounds[n]`.
#[derive(Debug, Clone, Serialize)]
pub struct DftSeries {
    pub series: CoefficientSeries,
    pub error_bounds: Vec<f64>,
    pub rho: f64,
    pub grid: usize,
}

/// `Â_n = (1/(M ρⁿ)) Σ_j f(ρ ω^j) ω^{−jn}`, `ω = e^{2πi/M}`.
///
/// With `‖A_k‖ ≤ coeff_bound` for all `k`, aliasing contributes at most
/// `coeff_bound·ρ^{M−n}/(1 − ρ^M)`. A rounding allowance proportional to the
/// sampled sup norm over `ρⁿ` is added on top.
pub fn coefficients_dft<F>(
    sample: F,
    dim: usize,
    rho: f64,
    n: usize,
    grid: usize,
    coeff_bound: f64,
) -> Result<DftSeries, ModelError>
where
    F: Fn(Complex64) -> ComplexMatrix,
{
    let required = 4 * (n + 1);
    if grid < required {
        return Err(ModelError::GridTooCoarse { grid, required });
    }
    let tau = std::f64::consts::TAU;
    let samples: Vec<ComplexMatrix> = (0..grid)
        .map(|j| sample(Complex64::from_polar(rho, tau * j as f64 / grid as f64)))
        .collect();
    let sup = samples.iter().map(operator_norm).fold(0.0, f64::max);

    let rho_m = rho.powi(grid as i32);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut error_bounds = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = ComplexMatrix::zeros(dim);
        for (j, f) in samples.iter().enumerate() {
            // reduce j·k mod M before forming the angle
            let phase = Complex64::from_polar(1.0, -tau * ((j * k) % grid) as f64 / grid as f64);
            acc = &acc + &f.scale_complex(phase);
        }
        let scale = 1.0 / (grid as f64 * rho.powi(k as i32));
        coeffs.push(acc.scale(scale));

        let aliasing = coeff_bound * rho.powi((grid - k) as i32) / (1.0 - rho_m);
        let rounding = (4.0 * (grid + dim) as f64 * f64::EPSILON + 1e-13 * dim as f64) * sup / rho.powi(k as i32);
        error_bounds.push(aliasing + rounding);
    }

    Ok(DftSeries {
        series: CoefficientSeries::new(coeffs, coeff_bound),
        error_bounds,
        rho,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{scalar_mobius, OperatorFunction, Polynomial};

    #[test]
    fn identity_map_coefficients() {
        let f: OperatorFunction = Polynomial::new(vec![ComplexMatrix::zeros(2), ComplexMatrix::identity(2)])
            .unwrap()
            .into();
        let d = f.coefficients_dft(0.5, 3, 16).unwrap();
        let a1 = &d.series.coeffs[1];
        assert!((a1 - &ComplexMatrix::identity(2)).frobenius_norm() <= 1e-4);
        for k in [0, 2, 3] {
            assert!(operator_norm(&d.series.coeffs[k]) <= d.error_bounds[k]);
        }
    }

    #[test]
    fn mobius_second_coefficient() {
        let f = scalar_mobius(0.5);
        let d = f.coefficients_dft(0.5, 2, 64).unwrap();
        let err = (d.series.coeffs[2][(0, 0)] - Complex64::new(-0.375, 0.0)).norm();
        assert!(err <= d.error_bounds[2], "{err} vs {}", d.error_bounds[2]);
    }

    #[test]
    fn constant_function() {
        let a0 = ComplexMatrix::from_real_rows(&[&[0.1, 0.2], &[0.0, -0.3]]).unwrap();
        let f: OperatorFunction = Polynomial::new(vec![a0.clone()]).unwrap().into();
        let d = f.coefficients_dft(0.7, 5, 24).unwrap();
        assert!((&d.series.coeffs[0] - &a0).frobenius_norm() < 1e-14);
        for k in 1..=5 {
            assert!(d.series.coeffs[k].frobenius_norm() < 1e-13);
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let f = scalar_mobius(0.5);
        assert!(matches!(
            f.coefficients_dft(0.5, 3, 15),
            Err(ModelError::GridTooCoarse { grid: 15, required: 16 })
        ));
    }
}
