use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LinalgError;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense square complex matrix, row-major.
///
/// Every operator in the crate lives in this type. The constructors reject
/// empty or non-finite input, so downstream code can assume `dim >= 1` and
/// finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self, LinalgError> {
        if dim == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        if entries.len() != dim * dim {
            return Err(LinalgError::ShapeMismatch {
                expected: dim * dim,
                actual: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(LinalgError::NonFinite);
        }
        Ok(Self { dim, entries })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(LinalgError::ShapeMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::from_row_major(dim, entries)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, ONE)
    }

    pub fn scalar(dim: usize, value: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = value;
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `basis · diag(values) · basis*`.
    pub fn conjugate_diag(basis: &ComplexMatrix, values: &[Complex64]) -> Self {
        let n = basis.dim;
        assert_eq!(values.len(), n, "diagonal length must match basis dimension");
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for (k, &v) in values.iter().enumerate() {
                    acc += basis[(i, k)] * v * basis[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn conjugate_real_diag(basis: &ComplexMatrix, values: &[f64]) -> Self {
        let values: Vec<Complex64> = values.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::conjugate_diag(basis, &values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn trace(&self) -> Complex64 {
        self.diagonal().into_iter().sum()
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = Complex64::new(self[(i, i)].re, 0.0);
            for j in (i + 1)..n {
                let v = (self[(i, j)] + self[(j, i)].conj()) * 0.5;
                out[(i, j)] = v;
                out[(j, i)] = v.conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length must match matrix dimension");
        (0..self.dim)
            .map(|i| {
                let row = &self.entries[i * self.dim..(i + 1) * self.dim];
                row.iter().zip(x).map(|(a, b)| a * b).sum()
            })
            .collect()
    }

    /// `⟨Ax, x⟩`, real part only (meaningful for Hermitian `A`).
    pub fn quadratic_form(&self, x: &[Complex64]) -> f64 {
        let ax = self.mul_vec(x);
        ax.iter().zip(x).map(|(a, b)| (a * b.conj()).re).sum()
    }

    pub fn try_mul(&self, rhs: &ComplexMatrix) -> Result<Self, LinalgError> {
        check_dims(self, rhs)?;
        Ok(self * rhs)
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.dim);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse via LU with partial pivoting.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let n = self.dim;
        let mut lu = self.entries.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let (pivot, best) = (col..n)
                .map(|r| (r, lu[r * n + col].norm()))
                .fold((col, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= 1e-15 * scale {
                return Err(LinalgError::Singular);
            }
            if pivot != col {
                for k in 0..n {
                    lu.swap(col * n + k, pivot * n + k);
                }
                perm.swap(col, pivot);
            }
            let d = lu[col * n + col];
            for r in (col + 1)..n {
                let factor = lu[r * n + col] / d;
                lu[r * n + col] = factor;
                for k in (col + 1)..n {
                    let sub = factor * lu[col * n + k];
                    lu[r * n + k] -= sub;
                }
            }
        }

        let mut inv = Self::zeros(n);
        let mut y = vec![ZERO; n];
        for j in 0..n {
            // solve L y = P e_j
            for i in 0..n {
                let mut v = if perm[i] == j { ONE } else { ZERO };
                for k in 0..i {
                    v -= lu[i * n + k] * y[k];
                }
                y[i] = v;
            }
            for i in (0..n).rev() {
                let mut v = y[i];
                for k in (i + 1)..n {
                    v -= lu[i * n + k] * inv[(k, j)];
                }
                inv[(i, j)] = v / lu[i * n + i];
            }
        }
        if !inv.is_finite() {
            return Err(LinalgError::Singular);
        }
        Ok(inv)
    }
}

pub(crate) fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<(), LinalgError> {
    if a.dim != b.dim {
        return Err(LinalgError::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix sum");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matrix difference");
        ComplexMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scale(-1.0)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6e}{:+.6e}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            dim: self.dim,
            entries: self.entries.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        let entries = repr
            .entries
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_row_major(repr.dim, entries).map_err(serde::de::Error::custom)
    }
}
