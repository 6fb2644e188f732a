//! Seeded instance generators for each hypothesis class.
//!
//! Every generator draws from one `ChaCha8Rng` stream seeded by `seed`: the
//! basis first, then per-channel parameters in a fixed order. Overridden
//! parameters are still drawn, so pinning one value leaves the others alone.

use std::ops::RangeInclusive;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::mobius::complex_pair_opt;
use super::{
    hypothesis_check, HalfPlaneLift, HypothesisClass, MobiusChannel, MobiusLift, ModelError, OperatorFunction,
    TransferRealization, HALF_PLANE_BETA_MAX,
};
use crate::linalg::{random_unitary, random_unitary_with, seeded_rng, uniform_disk, unimodular};

/// Radius of the disk the Möbius parameters `λ_i` are drawn from.
pub const MOBIUS_LAMBDA_RADIUS: f64 = 1.0 - 1e-3;
/// Upper end of the half-plane diagonal `d_i`.
pub const HALF_PLANE_DIAG_MAX: f64 = 1.0 - 1e-3;

/// Pinned values for Möbius channels. `relax` admits `|λ| = 1` and skips
/// hypothesis certification.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MobiusOverrides {
    #[serde(with = "complex_pair_opt", skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Complex64>,
    #[serde(with = "complex_pair_opt", skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    pub relax: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HalfPlaneOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diag: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(with = "complex_pair_opt", skip_serializing_if = "Option::is_none")]
    pub beta: Option<Complex64>,
}

fn check_degrees(degrees: &RangeInclusive<u32>) -> Result<(), ModelError> {
    if degrees.is_empty() || *degrees.start() == 0 {
        return Err(ModelError::InvalidParameter(format!(
            "channel degrees {}..={} must be a non-empty range of positive integers",
            degrees.start(),
            degrees.end()
        )));
    }
    Ok(())
}

fn check_dim(dim: usize) -> Result<(), ModelError> {
    if dim == 0 {
        return Err(ModelError::InvalidParameter("dimension must be positive".into()));
    }
    Ok(())
}

fn certify(f: OperatorFunction, class: HypothesisClass) -> Result<OperatorFunction, ModelError> {
    let report = hypothesis_check(&f, class);
    if !report.passed() {
        return Err(ModelError::HypothesisViolated(report.failures.join("; ")));
    }
    Ok(f)
}

fn mobius_instance(
    dim: usize,
    degrees: RangeInclusive<u32>,
    seed: u64,
    overrides: &MobiusOverrides,
    common_lambda: bool,
) -> Result<OperatorFunction, ModelError> {
    check_dim(dim)?;
    check_degrees(&degrees)?;
    let mut rng = seeded_rng(seed);
    let basis = random_unitary_with(dim, &mut rng);
    let shared = uniform_disk(&mut rng, MOBIUS_LAMBDA_RADIUS);
    let mut channels = Vec::with_capacity(dim);
    for _ in 0..dim {
        let drawn = uniform_disk(&mut rng, MOBIUS_LAMBDA_RADIUS);
        let epsilon = unimodular(&mut rng);
        let degree = rng.random_range(degrees.clone());
        let lambda = if common_lambda { shared } else { drawn };
        channels.push(MobiusChannel::new(
            overrides.lambda.unwrap_or(lambda),
            overrides.epsilon.unwrap_or(epsilon),
            overrides.degree.unwrap_or(degree),
        ));
    }
    let class = if common_lambda { HypothesisClass::Cor2 } else { HypothesisClass::Thm1 };
    if overrides.relax {
        return Ok(MobiusLift::new_relaxed(basis, channels)?.into());
    }
    certify(MobiusLift::new(basis, channels)?.into(), class)
}

/// Random Möbius lift satisfying the normal, commuting, strict-contraction
/// hypotheses.
pub fn generate_thm1_instance(
    dim: usize,
    degrees: RangeInclusive<u32>,
    seed: u64,
    overrides: &MobiusOverrides,
) -> Result<OperatorFunction, ModelError> {
    mobius_instance(dim, degrees, seed, overrides, false)
}

/// Möbius lift with one `λ` shared by every channel, so `A_0 = λI`.
pub fn generate_cor2_instance(
    dim: usize,
    degrees: RangeInclusive<u32>,
    seed: u64,
    overrides: &MobiusOverrides,
) -> Result<OperatorFunction, ModelError> {
    mobius_instance(dim, degrees, seed, overrides, true)
}

/// Random half-plane lift. `t` is drawn from `[0, t_max(β)]` so that
/// `Re f ⪯ I` holds on the whole disk.
pub fn generate_thm2_instance(
    dim: usize,
    seed: u64,
    overrides: &HalfPlaneOverrides,
) -> Result<OperatorFunction, ModelError> {
    check_dim(dim)?;
    let mut rng = seeded_rng(seed);
    let basis = random_unitary_with(dim, &mut rng);
    let diag: Vec<f64> = (0..dim).map(|_| HALF_PLANE_DIAG_MAX * rng.random::<f64>()).collect();
    let beta = overrides.beta.unwrap_or_else(|| uniform_disk(&mut rng, HALF_PLANE_BETA_MAX));
    let u: f64 = rng.random();
    let t = overrides.t.unwrap_or(u * HalfPlaneLift::max_symbol_weight(beta));
    let diag = overrides.diag.clone().unwrap_or(diag);
    certify(HalfPlaneLift::new(basis, diag, t, beta)?.into(), HypothesisClass::Thm2)
}

/// Transfer function of a Haar-random unitary colligation with state space
/// of dimension `state_dim`.
pub fn generate_transfer_instance(dim: usize, state_dim: usize, seed: u64) -> Result<OperatorFunction, ModelError> {
    check_dim(dim)?;
    let colligation = random_unitary(dim + state_dim, seed);
    certify(TransferRealization::new(state_dim, colligation)?.into(), HypothesisClass::Schur)
}
