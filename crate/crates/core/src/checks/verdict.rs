use serde::{Deserialize, Serialize};

use crate::linalg::{abs_operator, hermitian_eigen, max_eigenpair, ComplexMatrix};
use crate::models::{CoefficientSeries, OperatorFunction};

/// First truncation order tried by adaptive checks.
pub const N_START: usize = 64;
/// Truncation orders double up to this cap.
pub const N_CAP: usize = 4096;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BohrStatus {
    Holds,
    Violated,
    Inconclusive,
}

impl BohrStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BohrStatus::Holds => "holds",
            BohrStatus::Violated => "violated",
            BohrStatus::Inconclusive => "inconclusive",
        }
    }

    /// `Violated` dominates `Inconclusive`, which dominates `Holds`.
    pub fn worst(self, other: BohrStatus) -> BohrStatus {
        use BohrStatus::*;
        match (self, other) {
            (Violated, _) | (_, Violated) => Violated,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BohrVerdict {
    pub status: BohrStatus,
    pub r: f64,
    /// `λ_max(S_N − R)` for the partial sum `S_N` and right-hand side `R`.
    pub lhs_extreme: f64,
    /// Certified bound on the norm of the omitted terms.
    pub truncation_gap: f64,
    #[serde(rename = "N_used")]
    pub n_used: usize,
    pub tolerance: f64,
    /// `Holds` with the partial sum within `tol` of the right-hand side.
    pub boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<String>,
}

impl BohrVerdict {
    pub fn holds(&self) -> bool {
        self.status == BohrStatus::Holds
    }

    /// `RHS − LHS` along the worst direction, a signed distance to equality.
    pub fn margin(&self) -> f64 {
        -self.lhs_extreme
    }

    pub fn with_step(mut self, step: impl Into<String>) -> Self {
        self.step = Some(step.into());
        self
    }
}

/// Which operator each coefficient contributes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesTerm {
    /// `|A_n| rⁿ`
    Abs,
    /// `|A_n|² rⁿ`
    AbsSquared,
}

impl SeriesTerm {
    fn operator(self, a: &ComplexMatrix) -> ComplexMatrix {
        match self {
            SeriesTerm::Abs => abs_operator(a),
            SeriesTerm::AbsSquared => (&a.adjoint() * a).hermitian_part(),
        }
    }

    fn tail_factor(self, c: f64) -> f64 {
        match self {
            SeriesTerm::Abs => c,
            SeriesTerm::AbsSquared => c * c,
        }
    }
}

/// `(Σ_{n≤N} |A_n| rⁿ, c·r^{N+1}/(1−r))` where `c` bounds `‖A_n‖` beyond `N`.
pub fn majorant(series: &CoefficientSeries, r: f64, n: usize) -> (ComplexMatrix, f64) {
    assert!((0.0..1.0).contains(&r), "radius must lie in [0, 1)");
    let s = series.truncate(n);
    let mut partial = ComplexMatrix::zeros(s.dim());
    for (k, a) in s.coeffs.iter().enumerate() {
        partial = &partial + &abs_operator(a).scale(r.powi(k as i32));
    }
    (partial, tail(s.tail_norm_bound, s.is_exact(), r, s.last_index(), SeriesTerm::Abs))
}

fn tail(c: f64, exact: bool, r: f64, n: usize, term: SeriesTerm) -> f64 {
    if exact || c == 0.0 {
        return 0.0;
    }
    term.tail_factor(c) * r.powi(n as i32 + 1) / (1.0 - r)
}

struct PartialSums<'a> {
    f: &'a OperatorFunction,
    r: f64,
    term: SeriesTerm,
    partial: ComplexMatrix,
    next: usize,
}

impl<'a> PartialSums<'a> {
    fn new(f: &'a OperatorFunction, r: f64, first: usize, term: SeriesTerm) -> Self {
        Self {
            f,
            r,
            term,
            partial: ComplexMatrix::zeros(f.dim()),
            next: first,
        }
    }

    /// Extends the partial sum to order `n`; returns the certified tail.
    fn extend_to(&mut self, n: usize) -> f64 {
        let series = self.f.coefficients(n);
        let last = series.last_index();
        for k in self.next..=last {
            let t = self.term.operator(&series.coeffs[k]).scale(self.r.powi(k as i32));
            self.partial = &self.partial + &t;
        }
        self.next = last + 1;
        tail(series.tail_norm_bound, series.is_exact(), self.r, last, self.term)
    }
}

/// Adaptive comparison `Σ_{n≥first} T(A_n) rⁿ ⪯ rhs`, doubling `N` from 64 to
/// 4096 until the verdict is conclusive.
pub fn check_series(
    f: &OperatorFunction,
    r: f64,
    first: usize,
    term: SeriesTerm,
    rhs: &ComplexMatrix,
    tol: f64,
) -> BohrVerdict {
    assert!((0.0..1.0).contains(&r), "radius must lie in [0, 1)");
    assert!(tol > 0.0, "tolerance must be positive");
    let mut sums = PartialSums::new(f, r, first, term);
    let mut n = N_START;
    loop {
        let gap = sums.extend_to(n);
        let diff = (&sums.partial - rhs).hermitian_part();
        let (extreme, v) = max_eigenpair(&diff).expect("Hermitian difference");
        let status = if extreme > tol {
            BohrStatus::Violated
        } else if extreme + gap <= tol {
            BohrStatus::Holds
        } else if n >= N_CAP || gap == 0.0 {
            BohrStatus::Inconclusive
        } else {
            n *= 2;
            continue;
        };
        return BohrVerdict {
            status,
            r,
            lhs_extreme: extreme,
            truncation_gap: gap,
            n_used: n,
            tolerance: tol,
            boundary: status == BohrStatus::Holds && extreme > -tol,
            witness: (status == BohrStatus::Violated).then(|| v.iter().map(|z| [z.re, z.im]).collect()),
            step: None,
        };
    }
}

/// `Σ_{n≥0} |A_n| rⁿ ⪯ I`.
pub fn check_bohr(f: &OperatorFunction, r: f64, tol: f64) -> BohrVerdict {
    check_series(f, r, 0, SeriesTerm::Abs, &ComplexMatrix::identity(f.dim()), tol)
}

/// `λ_max(Σ_{n≥0} |A_n| rⁿ)` to within the returned truncation bound, which
/// is driven below `1e−13` unless the cap is reached first.
pub fn majorant_value(f: &OperatorFunction, r: f64) -> (f64, f64) {
    assert!((0.0..1.0).contains(&r), "radius must lie in [0, 1)");
    let mut sums = PartialSums::new(f, r, 0, SeriesTerm::Abs);
    let mut n = N_START;
    loop {
        let gap = sums.extend_to(n);
        if gap <= 1e-13 || n >= N_CAP {
            let top = hermitian_eigen(&sums.partial.hermitian_part())
                .expect("Hermitian sum")
                .max_eigenvalue();
            return (top, gap);
        }
        n *= 2;
    }
}
