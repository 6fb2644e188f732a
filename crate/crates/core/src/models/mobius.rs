use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{check_unitary, CoefficientSeries, ModelError};
use crate::linalg::ComplexMatrix;

/// One eigenchannel: `(λ + b(z)) / (1 + conj(λ) b(z))` with `b(z) = ε z^m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MobiusChannel {
    #[serde(with = "complex_pair")]
    pub lambda: Complex64,
    #[serde(with = "complex_pair")]
    pub epsilon: Complex64,
    pub degree: u32,
}

impl MobiusChannel {
    pub fn new(lambda: Complex64, epsilon: Complex64, degree: u32) -> Self {
        Self {
            lambda,
            epsilon,
            degree,
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let b = self.epsilon * z.powu(self.degree);
        (self.lambda + b) / (Complex64::new(1.0, 0.0) + self.lambda.conj() * b)
    }

    /// Taylor coefficient of `z^n`: `λ` at 0, `(1−|λ|²)(−conj λ)^{k−1} ε^k` at `n = km`.
    pub fn coefficient(&self, n: usize) -> Complex64 {
        if n == 0 {
            return self.lambda;
        }
        let m = self.degree as usize;
        if !n.is_multiple_of(m) {
            return Complex64::new(0.0, 0.0);
        }
        let k = (n / m) as i32;
        let defect = 1.0 - self.lambda.norm_sqr();
        (-self.lambda.conj()).powi(k - 1) * self.epsilon.powi(k) * defect
    }

    /// `sup_{n>N} |coefficient(n)|`; the moduli decrease along `n = km`.
    pub fn tail_modulus(&self, n: usize) -> f64 {
        let k_next = n / self.degree as usize + 1;
        (1.0 - self.lambda.norm_sqr()).max(0.0) * self.lambda.norm().powi(k_next as i32 - 1)
    }
}

/// Simultaneously diagonal lift of scalar Möbius compositions: in the common
/// unitary basis `Q`, channel `i` carries its own scalar self-map of the disk.
///
/// `A_0 = Q diag(λ_i) Q*` is normal and commutes with every coefficient, and
/// `‖f(z)‖ < 1` on the open disk whenever every `|λ_i| < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MobiusLift {
    basis: ComplexMatrix,
    channels: Vec<MobiusChannel>,
}

impl MobiusLift {
    pub fn new(basis: ComplexMatrix, channels: Vec<MobiusChannel>) -> Result<Self, ModelError> {
        Self::build(basis, channels, false)
    }

    /// Accepts `|λ_i| = 1` (unimodular constant channels), which only
    /// satisfies the non-strict `‖f(z)‖ ≤ 1`.
    pub fn new_relaxed(basis: ComplexMatrix, channels: Vec<MobiusChannel>) -> Result<Self, ModelError> {
        Self::build(basis, channels, true)
    }

    fn build(basis: ComplexMatrix, channels: Vec<MobiusChannel>, allow_boundary: bool) -> Result<Self, ModelError> {
        if channels.len() != basis.dim() {
            return Err(ModelError::InvalidParameter(format!(
                "{} channels for a basis of dimension {}",
                channels.len(),
                basis.dim()
            )));
        }
        check_unitary(&basis, "Möbius basis")?;
        for (i, ch) in channels.iter().enumerate() {
            let modulus = ch.lambda.norm();
            let admissible = if allow_boundary {
                modulus <= 1.0 + 1e-12
            } else {
                modulus < 1.0
            };
            if !admissible || !modulus.is_finite() {
                return Err(ModelError::InvalidParameter(format!(
                    "channel {i}: |lambda| = {modulus} must be < 1 (boundary values need the relaxation flag)"
                )));
            }
            if (ch.epsilon.norm() - 1.0).abs() > 1e-12 {
                return Err(ModelError::InvalidParameter(format!("channel {i}: epsilon must be unimodular")));
            }
            if ch.degree == 0 {
                return Err(ModelError::InvalidParameter(format!("channel {i}: degree must be at least 1")));
            }
        }
        Ok(Self { basis, channels })
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn channels(&self) -> &[MobiusChannel] {
        &self.channels
    }

    pub fn evaluate(&self, z: Complex64) -> ComplexMatrix {
        let values: Vec<Complex64> = self.channels.iter().map(|c| c.evaluate(z)).collect();
        ComplexMatrix::conjugate_diag(&self.basis, &values)
    }

    /// Exact coefficients; the tail bound is the largest channel coefficient
    /// modulus past `N`, which never exceeds 1.
    pub fn coefficients(&self, n: usize) -> CoefficientSeries {
        let coeffs = (0..=n)
            .map(|k| {
                let diag: Vec<Complex64> = self.channels.iter().map(|c| c.coefficient(k)).collect();
                ComplexMatrix::conjugate_diag(&self.basis, &diag)
            })
            .collect();
        let tail = self.channels.iter().map(|c| c.tail_modulus(n)).fold(0.0, f64::max);
        CoefficientSeries::new(coeffs, tail)
    }
}

pub(crate) mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

pub(crate) mod complex_pair_opt {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(|z| [z.re, z.im]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<[f64; 2]>::deserialize(d)?.map(|[re, im]| Complex64::new(re, im)))
    }
}
