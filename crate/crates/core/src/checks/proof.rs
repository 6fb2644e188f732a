//! Operator inequalities from the proofs, checked one step at a time.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    check_bohr, check_radius, check_series, require_hypotheses, BohrStatus, BohrVerdict, CheckError, SeriesTerm,
    DEFAULT_TOL,
};
use crate::linalg::{
    abs_operator, default_loewner_tol, loewner_leq, operator_norm, psd_sqrt, ComplexMatrix, LoewnerVerdict,
};
use crate::models::{CoefficientSeries, HypothesisClass, OperatorFunction};

/// Number of decimated coefficients audited by [`coefficient_bound_eq14`].
pub const EQ14_DEPTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofStep {
    /// `(f−A_0)*(f−A_0) ⪯ (I−A_0*f)*(I−A_0*f)` at sample points.
    Eq5,
    /// `Σ_{n≤k} |A_n|² ⪯ (I−|A_0|²)² Σ_{n≤k} |A_0|^{2(n−1)}`.
    Eq9,
    /// `Σ_{n≤k} |A_n||A_0|ⁿ ⪯ |A_0|(I−|A_0|²) Σ_{n≤k} |A_0|^{2(n−1)}`.
    Eq10,
    /// `Σ_{n≥1} |A_n| rⁿ ⪯ r(I−|A_0|²)(I−r|A_0|)⁻¹`, given `rI ⪯ |A_0|`.
    Eq11,
    /// `Σ_{n≥1} |A_n| rⁿ ⪯ (I−|A_0|²)^{1/2} r/√(1−r²)`.
    Eq12,
    /// `|A_1| ⪯ I−|A_0|² ⪯ 2(I−|A_0|)`.
    Eq14,
    /// `(f−A_0)*(f−A_0) ⪯ G*G`, `G = 2(I−A_0) − (f−A_0)`, at sample points.
    Eq1,
    /// `Σ_{n≥1} |A_n|² rⁿ ⪯ 4(I−A_0)² r/(1−r)`.
    Eq2,
    /// `Σ_{n≥0} |A_n| rⁿ ⪯ (1−r²)^{−1/2} I`.
    Bb2Remark,
    /// `Σ_{n≥1} |A_n| rⁿ ⪯ 2(I−A_0) r/(1−r)`.
    Thm2Final,
}

impl ProofStep {
    pub const ALL: [ProofStep; 10] = [
        ProofStep::Eq5,
        ProofStep::Eq9,
        ProofStep::Eq10,
        ProofStep::Eq11,
        ProofStep::Eq12,
        ProofStep::Eq14,
        ProofStep::Eq1,
        ProofStep::Eq2,
        ProofStep::Bb2Remark,
        ProofStep::Thm2Final,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProofStep::Eq5 => "eq5",
            ProofStep::Eq9 => "eq9",
            ProofStep::Eq10 => "eq10",
            ProofStep::Eq11 => "eq11",
            ProofStep::Eq12 => "eq12",
            ProofStep::Eq14 => "eq14",
            ProofStep::Eq1 => "eq1",
            ProofStep::Eq2 => "eq2",
            ProofStep::Bb2Remark => "bb2_remark",
            ProofStep::Thm2Final => "thm2_final",
        }
    }

    /// Hypothesis class under which the step is asserted.
    pub fn class(self) -> HypothesisClass {
        match self {
            ProofStep::Eq5 | ProofStep::Eq9 | ProofStep::Eq10 | ProofStep::Eq11 | ProofStep::Eq12 | ProofStep::Eq14 => {
                HypothesisClass::Thm1
            }
            ProofStep::Eq1 | ProofStep::Eq2 | ProofStep::Thm2Final => HypothesisClass::Thm2,
            ProofStep::Bb2Remark => HypothesisClass::Schur,
        }
    }
}

impl std::str::FromStr for ProofStep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        ProofStep::ALL
            .into_iter()
            .find(|p| p.as_str() == key || (key == "bb2remark" && *p == ProofStep::Bb2Remark))
            .ok_or_else(|| format!("unknown proof step `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProofParams {
    /// Truncation `k` for the finite sums of Eq9 and Eq10.
    pub k: usize,
    /// Radius for the series steps.
    pub r: f64,
    /// Points for the pointwise steps Eq5 and Eq1.
    pub samples: Vec<Complex64>,
    /// Overrides the default Loewner tolerance.
    pub tol: Option<f64>,
}

impl Default for ProofParams {
    fn default() -> Self {
        Self {
            k: 20,
            r: 1.0 / 3.0,
            samples: default_z_samples(64),
            tol: None,
        }
    }
}

/// `m` points on a golden-angle spiral filling the disk of radius 0.99.
pub fn default_z_samples(m: usize) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..m)
        .map(|j| Complex64::from_polar(0.99 * ((j as f64 + 0.5) / m as f64).sqrt(), golden * j as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofStepReport {
    pub step: ProofStep,
    pub status: BohrStatus,
    pub verdict: LoewnerVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    /// Sample point attaining the smallest gap, for pointwise steps.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[f64; 2]>,
    pub truncation_gap: f64,
    #[serde(rename = "N_used", default, skip_serializing_if = "Option::is_none")]
    pub n_used: Option<usize>,
}

impl ProofStepReport {
    fn exact(step: ProofStep, verdict: LoewnerVerdict) -> Self {
        Self {
            step,
            status: status_of(&verdict),
            verdict,
            k: None,
            r: None,
            z: None,
            truncation_gap: 0.0,
            n_used: None,
        }
    }

    fn from_series(step: ProofStep, v: &BohrVerdict) -> Self {
        let witness = v
            .witness
            .as_ref()
            .map(|w| w.iter().map(|&[re, im]| Complex64::new(re, im)).collect());
        let gap = if v.status == BohrStatus::Inconclusive {
            -v.lhs_extreme
        } else {
            -v.lhs_extreme - v.truncation_gap
        };
        Self {
            step,
            status: v.status,
            verdict: LoewnerVerdict::from_gap(gap, v.tolerance, witness),
            k: None,
            r: Some(v.r),
            z: None,
            truncation_gap: v.truncation_gap,
            n_used: Some(v.n_used),
        }
    }

    pub fn holds(&self) -> bool {
        self.status == BohrStatus::Holds
    }
}

fn status_of(v: &LoewnerVerdict) -> BohrStatus {
    if v.holds() {
        BohrStatus::Holds
    } else {
        BohrStatus::Violated
    }
}

fn class_name(f: &OperatorFunction) -> &'static str {
    f.native_class().map(|c| c.as_str()).unwrap_or("polynomial")
}

/// Rejects steps asserted for another class than the function's own, then
/// verifies the step's hypotheses numerically.
fn admit(f: &OperatorFunction, step: ProofStep) -> Result<(), CheckError> {
    let needed = step.class();
    let compatible = match f.native_class() {
        None => true,
        Some(native) => native == needed || (native == HypothesisClass::Thm1 && needed == HypothesisClass::Schur),
    };
    if !compatible {
        return Err(CheckError::StepClassMismatch {
            step: step.as_str(),
            expected: needed.as_str(),
            actual: class_name(f),
        });
    }
    require_hypotheses(f, needed)
}

fn leq(a: &ComplexMatrix, b: &ComplexMatrix, tol: Option<f64>) -> Result<LoewnerVerdict, CheckError> {
    let a = a.hermitian_part();
    let b = b.hermitian_part();
    let tol = tol.unwrap_or_else(|| default_loewner_tol(&a, &b));
    Ok(loewner_leq(&a, &b, tol)?)
}

fn series_tol(rhs: &ComplexMatrix, tol: Option<f64>) -> f64 {
    tol.unwrap_or(DEFAULT_TOL * (1.0 + operator_norm(rhs)))
}

fn gram(m: &ComplexMatrix) -> ComplexMatrix {
    (&m.adjoint() * m).hermitian_part()
}

/// `Σ_{n=1}^k P^{2(n−1)}`.
fn even_power_sum(p2: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(p2.dim());
    let mut power = ComplexMatrix::identity(p2.dim());
    for _ in 0..k {
        acc = &acc + &power;
        power = &power * p2;
    }
    acc
}

/// `|A_1| ⪯ I − |A_0|² ⪯ 2(I − |A_0|)`, reported as the tighter of the two links.
fn eq14_on(series: &CoefficientSeries, tol: Option<f64>) -> Result<LoewnerVerdict, CheckError> {
    let dim = series.dim();
    let identity = ComplexMatrix::identity(dim);
    let p = abs_operator(&series.coeffs[0]);
    let middle = &identity - &(&p * &p);
    let a1 = series
        .coeffs
        .get(1)
        .map(abs_operator)
        .unwrap_or_else(|| ComplexMatrix::zeros(dim));
    let first = leq(&a1, &middle, tol)?;
    let second = leq(&middle, &(&identity - &p).scale(2.0), tol)?;
    Ok(if first.min_gap <= second.min_gap { first } else { second })
}

fn pointwise(
    f: &OperatorFunction,
    step: ProofStep,
    samples: &[Complex64],
    tol: Option<f64>,
    sides: impl Fn(&ComplexMatrix, &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix),
) -> Result<ProofStepReport, CheckError> {
    if samples.is_empty() {
        return Err(CheckError::DomainError("no sample points".into()));
    }
    let a0 = f.initial_coefficient();
    let mut worst: Option<(LoewnerVerdict, Complex64)> = None;
    for &z in samples {
        let fz = f.evaluate(z).map_err(CheckError::from)?;
        let (lhs, rhs) = sides(&a0, &fz);
        let v = leq(&lhs, &rhs, tol)?;
        if worst.as_ref().is_none_or(|(w, _)| v.min_gap < w.min_gap) {
            worst = Some((v, z));
        }
    }
    let (verdict, z) = worst.expect("non-empty samples");
    let mut report = ProofStepReport::exact(step, verdict);
    report.z = Some([z.re, z.im]);
    Ok(report)
}

pub fn proof_step_validate(
    f: &OperatorFunction,
    step: ProofStep,
    params: &ProofParams,
) -> Result<ProofStepReport, CheckError> {
    admit(f, step)?;
    let dim = f.dim();
    let identity = ComplexMatrix::identity(dim);
    let a0 = f.initial_coefficient();
    let p = abs_operator(&a0);
    let p2 = &p * &p;
    let defect = &identity - &p2;
    let r = params.r;
    let tol = params.tol;

    let series_step = |rhs: ComplexMatrix, first: usize, term: SeriesTerm| -> Result<ProofStepReport, CheckError> {
        check_radius(r)?;
        let v = check_series(f, r, first, term, &rhs.hermitian_part(), series_tol(&rhs, tol));
        Ok(ProofStepReport::from_series(step, &v))
    };

    match step {
        ProofStep::Eq5 => pointwise(f, step, &params.samples, tol, |a0, fz| {
            let g = &ComplexMatrix::identity(a0.dim()) - &(&a0.adjoint() * fz);
            (gram(&(fz - a0)), gram(&g))
        }),
        ProofStep::Eq1 => pointwise(f, step, &params.samples, tol, |a0, fz| {
            let diff = fz - a0;
            let g = &(&ComplexMatrix::identity(a0.dim()) - a0).scale(2.0) - &diff;
            (gram(&diff), gram(&g))
        }),
        ProofStep::Eq9 | ProofStep::Eq10 => {
            let k = params.k.max(1);
            let series = f.coefficients(k);
            let mut lhs = ComplexMatrix::zeros(dim);
            let mut p_power = p.clone();
            for n in 1..=k {
                let a = series.coeffs.get(n).cloned().unwrap_or_else(|| ComplexMatrix::zeros(dim));
                let term = if step == ProofStep::Eq9 {
                    gram(&a)
                } else {
                    (&abs_operator(&a) * &p_power).hermitian_part()
                };
                lhs = &lhs + &term;
                p_power = &p_power * &p;
            }
            let sum = even_power_sum(&p2, k);
            let rhs = if step == ProofStep::Eq9 {
                &(&defect * &defect) * &sum
            } else {
                &(&p * &defect) * &sum
            };
            let mut report = ProofStepReport::exact(step, leq(&lhs, &rhs, tol)?);
            report.k = Some(k);
            Ok(report)
        }
        ProofStep::Eq11 => {
            check_radius(r)?;
            let pre = leq(&identity.scale(r), &p, None)?;
            if !pre.holds() {
                return Err(CheckError::PreconditionNotMet(format!(
                    "r I <= |A0| fails at r = {r} (gap {:e})",
                    pre.min_gap
                )));
            }
            let resolvent = (&identity - &p.scale(r)).inverse()?;
            series_step((&defect * &resolvent).scale(r), 1, SeriesTerm::Abs)
        }
        ProofStep::Eq12 => {
            check_radius(r)?;
            let root = psd_sqrt(&defect)?;
            series_step(root.scale(r / (1.0 - r * r).sqrt()), 1, SeriesTerm::Abs)
        }
        ProofStep::Eq14 => {
            let mut report = ProofStepReport::exact(step, eq14_on(&f.coefficients(1), tol)?);
            report.k = Some(1);
            Ok(report)
        }
        ProofStep::Eq2 => {
            check_radius(r)?;
            let gap = &identity - &a0;
            series_step(gram(&gap).scale(4.0 * r / (1.0 - r)), 1, SeriesTerm::AbsSquared)
        }
        ProofStep::Thm2Final => {
            check_radius(r)?;
            let gap = &identity - &a0;
            series_step(gap.scale(2.0 * r / (1.0 - r)), 1, SeriesTerm::Abs)
        }
        ProofStep::Bb2Remark => series_step(identity.scale(1.0 / (1.0 - r * r).sqrt()), 0, SeriesTerm::Abs),
    }
}

/// Eq14 for `A_n`, `n = 1…32`, each applied to the decimated function
/// `A_0 + A_n z + A_{2n} z² + …`.
pub fn coefficient_bound_eq14(f: &OperatorFunction, tol: Option<f64>) -> Result<Vec<ProofStepReport>, CheckError> {
    admit(f, ProofStep::Eq14)?;
    let series = f.coefficients(EQ14_DEPTH);
    (1..=EQ14_DEPTH)
        .map(|n| {
            let verdict = if n == 1 {
                eq14_on(&series, tol)?
            } else {
                eq14_on(&series.decimate(n), tol)?
            };
            let mut report = ProofStepReport::exact(ProofStep::Eq14, verdict);
            report.k = Some(n);
            Ok(report)
        })
        .collect()
}

/// The Bohr inequality at `r`, Eq2 and the final bound for a `Re f ⪯ I` instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm2Bounds {
    pub bohr: BohrVerdict,
    pub eq2: ProofStepReport,
    pub final_bound: ProofStepReport,
}

impl Thm2Bounds {
    pub fn status(&self) -> BohrStatus {
        self.bohr.status.worst(self.eq2.status).worst(self.final_bound.status)
    }
}

pub fn check_thm2_bounds(f: &OperatorFunction, r: f64, tol: f64) -> Result<Thm2Bounds, CheckError> {
    check_radius(r)?;
    admit(f, ProofStep::Eq2)?;
    let params = ProofParams {
        r,
        ..ProofParams::default()
    };
    Ok(Thm2Bounds {
        bohr: check_bohr(f, r, tol).with_step("thm2"),
        eq2: proof_step_validate(f, ProofStep::Eq2, &params)?,
        final_bound: proof_step_validate(f, ProofStep::Thm2Final, &params)?,
    })
}
