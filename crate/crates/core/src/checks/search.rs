//! Random search for Bohr violations once one hypothesis is dropped.
//!
//! Each instance breaks exactly one hypothesis and is tested with `check_bohr`
//! at the radius the theorem would have guaranteed from its `A_0`. Finding
//! nothing within the budget proves nothing.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_bohr, radius_from_abs, BohrStatus, BohrVerdict, CheckError, DEFAULT_TOL};
use crate::linalg::{
    abs_operator, complex_gaussian, operator_norm, random_unitary_with, seeded_rng, unimodular,
    ComplexMatrix,
};
use crate::models::{
    certify_schur_bound, hypothesis_check, FunctionClass, FunctionFile, HypothesisClass, HypothesisReport,
    MobiusChannel, MobiusLift, OperatorFunction, Polynomial, HYPOTHESIS_TOL,
};

/// Margin kept below 1 by the polynomial sup-norm certificate.
const SCHUR_MARGIN: f64 = 1e-3;
const BISECTION_STEPS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relaxation {
    /// Normal `A_0`, strict contraction, coefficients not commuting with `A_0`.
    DropCommutation,
    /// Non-normal `A_0` commuting with every coefficient, strict contraction.
    DropNormality,
    /// Normal commuting lift with a unimodular channel, so only `‖f(z)‖ ≤ 1`.
    WeakNormBound,
}

impl Relaxation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relaxation::DropCommutation => "drop_commutation",
            Relaxation::DropNormality => "drop_normality",
            Relaxation::WeakNormBound => "weak_norm_bound",
        }
    }
}

impl std::str::FromStr for Relaxation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "dropcommutation" => Ok(Relaxation::DropCommutation),
            "dropnormality" => Ok(Relaxation::DropNormality),
            "weaknormbound" => Ok(Relaxation::WeakNormBound),
            _ => Err(format!(
                "unknown relaxation `{s}` (expected drop_commutation, drop_normality, weak_norm_bound)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchWitness {
    pub instance: usize,
    pub r: f64,
    pub verdict: BohrVerdict,
    pub hypotheses: HypothesisReport,
    pub file: FunctionFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub relaxation: Relaxation,
    pub dim: usize,
    pub seed: u64,
    pub budget: usize,
    /// Instances tested with `check_bohr`.
    pub tested: usize,
    /// Instances that failed to break the named hypothesis.
    pub skipped: usize,
    pub witness: Option<SearchWitness>,
}

/// Tries `budget` instances and returns the first `Violated` one.
/// `WeakNormBound` needs `relax`, since its instances leave the strict class.
pub fn counterexample_search(
    relaxation: Relaxation,
    dim: usize,
    budget: usize,
    seed: u64,
    relax: bool,
) -> Result<SearchOutcome, CheckError> {
    if dim == 0 {
        return Err(CheckError::DomainError("dimension must be positive".into()));
    }
    if relaxation == Relaxation::WeakNormBound && !relax {
        return Err(CheckError::DomainError(
            "weak_norm_bound instances have unimodular parameters and need the relaxation flag".into(),
        ));
    }
    let mut rng = seeded_rng(seed);
    let mut outcome = SearchOutcome {
        relaxation,
        dim,
        seed,
        budget,
        tested: 0,
        skipped: 0,
        witness: None,
    };
    for instance in 0..budget {
        let (f, class) = match relaxation {
            Relaxation::DropCommutation => (non_commuting(dim, &mut rng)?, FunctionClass::Polynomial),
            Relaxation::DropNormality => (non_normal(dim, &mut rng)?, FunctionClass::Polynomial),
            Relaxation::WeakNormBound => (unimodular_channel(dim, &mut rng)?, FunctionClass::Thm1),
        };
        let report = hypothesis_check(&f, HypothesisClass::Thm1);
        let broken = match relaxation {
            Relaxation::DropCommutation => report.max_commutator > HYPOTHESIS_TOL,
            Relaxation::DropNormality => report.a0_normality_defect > HYPOTHESIS_TOL * (1.0 + report.a0_norm.powi(2)),
            Relaxation::WeakNormBound => report.a0_norm >= 1.0 - 1e-12,
        };
        if !broken {
            outcome.skipped += 1;
            continue;
        }
        let p = abs_operator(&f.initial_coefficient());
        let r = radius_from_abs(&p)?.radius;
        outcome.tested += 1;
        let verdict = check_bohr(&f, r, DEFAULT_TOL);
        if verdict.status == BohrStatus::Violated {
            outcome.witness = Some(SearchWitness {
                instance,
                r,
                verdict,
                hypotheses: report,
                file: FunctionFile::new(&f, class, Some(seed)),
            });
            break;
        }
    }
    Ok(outcome)
}

/// Scales `g` to the largest `s` (within `2^{−40}` relative) for which
/// `A_0 + s·g(z)` carries a certified sup norm `≤ 1 − 1e−3`.
fn contract(a0: ComplexMatrix, g: Vec<ComplexMatrix>) -> Result<OperatorFunction, CheckError> {
    let build = |s: f64| -> Result<Polynomial, CheckError> {
        let mut coeffs = vec![a0.clone()];
        coeffs.extend(g.iter().map(|a| a.scale(s)));
        Ok(Polynomial::new(coeffs)?)
    };
    let g_norm: f64 = g.iter().map(operator_norm).fold(0.0, f64::max);
    if g_norm == 0.0 {
        return Ok(build(0.0)?.into());
    }
    let mut lo = 0.0;
    let mut hi = 2.0 / g_norm;
    if certify_schur_bound(&build(lo)?, SCHUR_MARGIN).is_err() {
        return Err(CheckError::DomainError("initial coefficient is not a strict contraction".into()));
    }
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if certify_schur_bound(&build(mid)?, SCHUR_MARGIN).is_ok() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(build(lo)?.into())
}

/// Initial coefficient with moduli in `[1/2, 0.95]`, where the invertible
/// radius formula applies.
fn large_eigenvalues(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..dim)
        .map(|_| unimodular(rng) * rng.random_range(0.5..=0.95))
        .collect()
}

/// Coefficients are strictly lower triangular in the eigenbasis of `A_0`,
/// whose eigenvalues are sorted by decreasing modulus: they move mass from
/// large-eigenvalue channels into small ones.
fn non_commuting(dim: usize, rng: &mut ChaCha8Rng) -> Result<OperatorFunction, CheckError> {
    let basis = random_unitary_with(dim, rng);
    let mut eigenvalues = large_eigenvalues(dim, rng);
    eigenvalues.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
    let a0 = ComplexMatrix::conjugate_diag(&basis, &eigenvalues);
    let degree = rng.random_range(1..=3usize);
    let g = (0..degree)
        .map(|_| {
            let mut n = ComplexMatrix::zeros(dim);
            for i in 0..dim {
                for j in 0..i {
                    n[(i, j)] = complex_gaussian(rng);
                }
            }
            &(&basis * &n) * &basis.adjoint()
        })
        .collect();
    contract(a0, g)
}

fn non_normal(dim: usize, rng: &mut ChaCha8Rng) -> Result<OperatorFunction, CheckError> {
    let mut t = ComplexMatrix::from_diag(&large_eigenvalues(dim, rng));
    for i in 0..dim {
        for j in i + 1..dim {
            t[(i, j)] = complex_gaussian(rng) * 0.5;
        }
    }
    let basis = random_unitary_with(dim, rng);
    let mut a0 = &(&basis * &t) * &basis.adjoint();
    let target = rng.random_range(0.5..=0.95);
    a0 = a0.scale(target / operator_norm(&a0));
    let a0_sq = &a0 * &a0;
    let identity = ComplexMatrix::identity(dim);
    let degree = rng.random_range(1..=3usize);
    let g = (0..degree)
        .map(|_| {
            let c: [Complex64; 3] = [complex_gaussian(rng), complex_gaussian(rng), complex_gaussian(rng)];
            &(&identity.scale_complex(c[0]) + &a0.scale_complex(c[1])) + &a0_sq.scale_complex(c[2])
        })
        .collect();
    contract(a0, g)
}

fn unimodular_channel(dim: usize, rng: &mut ChaCha8Rng) -> Result<OperatorFunction, CheckError> {
    let basis = random_unitary_with(dim, rng);
    let channels = (0..dim)
        .map(|i| {
            let phase = unimodular(rng);
            let lambda = if i == 0 { phase } else { phase * rng.random_range(0.5..1.0 - 1e-3) };
            MobiusChannel::new(lambda, unimodular(rng), rng.random_range(1..=3))
        })
        .collect();
    Ok(MobiusLift::new_relaxed(basis, channels)?.into())
}
