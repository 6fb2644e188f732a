use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::mobius::complex_pair;
use super::{
    FunctionKind, HalfPlaneLift, HypothesisClass, MobiusChannel, MobiusLift, ModelError, OperatorFunction, Polynomial,
    TransferRealization,
};
use crate::linalg::ComplexMatrix;

/// Instance class recorded alongside a function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    Thm1,
    Cor2,
    Thm2,
    Transfer,
    Polynomial,
}

impl FunctionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            FunctionClass::Thm1 => "thm1",
            FunctionClass::Cor2 => "cor2",
            FunctionClass::Thm2 => "thm2",
            FunctionClass::Transfer => "transfer",
            FunctionClass::Polynomial => "polynomial",
        }
    }

    /// The hypothesis list instances of this class are certified against.
    pub fn hypothesis_class(self) -> Option<HypothesisClass> {
        match self {
            FunctionClass::Thm1 => Some(HypothesisClass::Thm1),
            FunctionClass::Cor2 => Some(HypothesisClass::Cor2),
            FunctionClass::Thm2 => Some(HypothesisClass::Thm2),
            FunctionClass::Transfer => Some(HypothesisClass::Schur),
            FunctionClass::Polynomial => None,
        }
    }
}

impl std::str::FromStr for FunctionClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "thm1" => Ok(FunctionClass::Thm1),
            "cor2" => Ok(FunctionClass::Cor2),
            "thm2" => Ok(FunctionClass::Thm2),
            "transfer" => Ok(FunctionClass::Transfer),
            "polynomial" => Ok(FunctionClass::Polynomial),
            other => Err(format!("unknown class `{other}` (expected thm1, cor2, thm2, transfer, polynomial)")),
        }
    }
}

/// On-disk form of a function. Serializing, parsing and serializing again
/// yields identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub kind: FunctionKind,
    pub dim: usize,
    pub data: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub class: FunctionClass,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolynomialData {
    coeffs: Vec<ComplexMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MobiusData {
    basis: ComplexMatrix,
    channels: Vec<MobiusChannel>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransferData {
    state_dim: usize,
    colligation: ComplexMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HalfPlaneData {
    basis: ComplexMatrix,
    diag: Vec<f64>,
    t: f64,
    #[serde(with = "complex_pair")]
    beta: Complex64,
}

fn to_value<T: Serialize>(payload: &T) -> serde_json::Value {
    serde_json::to_value(payload).expect("payload serializes")
}

fn from_value<T: for<'de> Deserialize<'de>>(value: &serde_json::Value) -> Result<T, ModelError> {
    T::deserialize(value).map_err(|e| ModelError::InvalidParameter(format!("function data: {e}")))
}

impl FunctionFile {
    pub fn new(f: &OperatorFunction, class: FunctionClass, seed: Option<u64>) -> Self {
        let data = match f {
            OperatorFunction::Polynomial(p) => to_value(&PolynomialData {
                coeffs: p.coeffs().to_vec(),
            }),
            OperatorFunction::MobiusLift(m) => to_value(&MobiusData {
                basis: m.basis().clone(),
                channels: m.channels().to_vec(),
            }),
            OperatorFunction::TransferRealization(t) => to_value(&TransferData {
                state_dim: t.state_dim(),
                colligation: t.colligation().clone(),
            }),
            OperatorFunction::HalfPlaneLift(h) => to_value(&HalfPlaneData {
                basis: h.basis().clone(),
                diag: h.diag().to_vec(),
                t: h.t(),
                beta: h.beta(),
            }),
        };
        Self {
            kind: f.kind(),
            dim: f.dim(),
            data,
            seed,
            class,
        }
    }

    /// Rebuilds the function, re-validating every invariant of its kind.
    /// `relax` admits unimodular Möbius parameters.
    pub fn to_function(&self, relax: bool) -> Result<OperatorFunction, ModelError> {
        let f: OperatorFunction = match self.kind {
            FunctionKind::Polynomial => Polynomial::new(from_value::<PolynomialData>(&self.data)?.coeffs)?.into(),
            FunctionKind::MobiusLift => {
                let d: MobiusData = from_value(&self.data)?;
                if relax {
                    MobiusLift::new_relaxed(d.basis, d.channels)?.into()
                } else {
                    MobiusLift::new(d.basis, d.channels)?.into()
                }
            }
            FunctionKind::TransferRealization => {
                let d: TransferData = from_value(&self.data)?;
                TransferRealization::new(d.state_dim, d.colligation)?.into()
            }
            FunctionKind::HalfPlaneLift => {
                let d: HalfPlaneData = from_value(&self.data)?;
                HalfPlaneLift::new(d.basis, d.diag, d.t, d.beta)?.into()
            }
        };
        if f.dim() != self.dim {
            return Err(ModelError::InvalidParameter(format!(
                "declared dim {} but data has dim {}",
                self.dim,
                f.dim()
            )));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("function file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::InvalidParameter(format!("function file: {e}")))
    }
}
