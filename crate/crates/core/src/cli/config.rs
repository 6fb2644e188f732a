use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::checks::{ProofStep, COR2_R_MAX};
use crate::models::{FunctionClass, HalfPlaneOverrides, MobiusOverrides};

/// Environment variable consulted when neither `--seed` nor the config sets one.
pub const SEED_ENV: &str = "BOHRLAB_SEED";

/// Statement checked by `verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Thm1,
    Cor1,
    Cor2,
    Thm2,
    #[value(name = "bb2remark", alias = "bb2_remark")]
    #[serde(rename = "bb2remark", alias = "bb2_remark")]
    Bb2Remark,
}

impl Theorem {
    pub fn as_str(self) -> &'static str {
        match self {
            Theorem::Thm1 => "thm1",
            Theorem::Cor1 => "cor1",
            Theorem::Cor2 => "cor2",
            Theorem::Thm2 => "thm2",
            Theorem::Bb2Remark => "bb2remark",
        }
    }

    pub fn default_radii(self) -> RadiiSpec {
        match self {
            Theorem::Thm1 => RadiiSpec::Named(NamedGrid::Guaranteed),
            Theorem::Cor1 | Theorem::Thm2 => RadiiSpec::List(vec![1.0 / 3.0]),
            Theorem::Cor2 => RadiiSpec::Named(NamedGrid::Cor2),
            Theorem::Bb2Remark => RadiiSpec::Named(NamedGrid::Tenths),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedGrid {
    /// Per instance: the guaranteed radius from `|A_0|` minus `1e−6`.
    Guaranteed,
    /// `0.35, 0.4, 0.5, 0.6, 1/√2`.
    Cor2,
    /// `0.1, 0.2, …, 0.9`.
    Tenths,
}

impl NamedGrid {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "guaranteed" => Some(NamedGrid::Guaranteed),
            "cor2" => Some(NamedGrid::Cor2),
            "tenths" => Some(NamedGrid::Tenths),
            _ => None,
        }
    }

    pub fn fixed(self) -> Option<Vec<f64>> {
        match self {
            NamedGrid::Guaranteed => None,
            NamedGrid::Cor2 => Some(vec![0.35, 0.4, 0.5, 0.6, COR2_R_MAX]),
            NamedGrid::Tenths => Some((1..=9).map(|i| i as f64 / 10.0).collect()),
        }
    }
}

/// Radii given as a list or by grid name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadiiSpec {
    List(Vec<f64>),
    Named(NamedGrid),
}

impl RadiiSpec {
    /// `--r` values: one grid name, or numbers.
    pub fn from_args(values: &[String]) -> anyhow::Result<Option<Self>> {
        if values.is_empty() {
            return Ok(None);
        }
        if let [single] = values {
            if let Some(grid) = NamedGrid::parse(single) {
                return Ok(Some(RadiiSpec::Named(grid)));
            }
        }
        let radii = values
            .iter()
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| anyhow::anyhow!("--r `{v}` is neither a number nor guaranteed, cor2, tenths"))
            })
            .collect::<anyhow::Result<Vec<f64>>>()?;
        Ok(Some(RadiiSpec::List(radii)))
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if let RadiiSpec::List(radii) = self {
            anyhow::ensure!(!radii.is_empty(), "radius list is empty");
            for &r in radii {
                anyhow::ensure!((0.0..1.0).contains(&r), "radius {r} not in [0, 1)");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Loewner tolerance of series checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bohr: Option<f64>,
    /// Tolerance of the proof-step comparisons; defaults to the scale-aware one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loewner: Option<f64>,
    /// Bracket width of the radius bisection.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bisection: Option<f64>,
}

/// Campaign file. Every field is optional; command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CampaignConfig {
    pub class: Option<FunctionClass>,
    pub dims: Vec<usize>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
    pub radii: Option<RadiiSpec>,
    pub steps: Vec<ProofStep>,
    pub theorem: Option<Theorem>,
    pub tolerances: Tolerances,
    pub output_dir: Option<PathBuf>,
    /// Inclusive range of Möbius channel degrees.
    pub degrees: Option<[u32; 2]>,
    /// State dimension of transfer realizations.
    pub state_dim: Option<usize>,
    pub k: Vec<usize>,
    pub samples: Option<usize>,
    pub mobius: MobiusOverrides,
    pub half_plane: HalfPlaneOverrides,
}

impl CampaignConfig {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("config {}: {e}", path.display()))?;
        let config: Self =
            serde_json::from_str(&text).map_err(|e| anyhow::anyhow!("config {}: {e}", path.display()))?;
        if let Some(count) = config.count {
            anyhow::ensure!(count >= 1, "config count must be at least 1");
        }
        anyhow::ensure!(config.dims.iter().all(|&d| d >= 1), "config dims must be at least 1");
        if let Some(radii) = &config.radii {
            radii.validate()?;
        }
        Ok(config)
    }

    /// `--seed`, then the config, then `BOHRLAB_SEED`, then 0.
    pub fn resolve_seed(&self, flag: Option<u64>) -> anyhow::Result<u64> {
        if let Some(seed) = flag.or(self.seed) {
            return Ok(seed);
        }
        match std::env::var(SEED_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| anyhow::anyhow!("{SEED_ENV}=`{v}` is not an unsigned integer")),
            Err(_) => Ok(0),
        }
    }
}

/// Hex SHA-256 of the compact JSON form of `value`.
pub fn config_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("config serializes");
    hex::encode(Sha256::digest(&bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radii_from_args() {
        assert_eq!(RadiiSpec::from_args(&[]).unwrap(), None);
        assert_eq!(
            RadiiSpec::from_args(&["cor2".into()]).unwrap(),
            Some(RadiiSpec::Named(NamedGrid::Cor2))
        );
        assert_eq!(
            RadiiSpec::from_args(&["0.25".into(), "0.5".into()]).unwrap(),
            Some(RadiiSpec::List(vec![0.25, 0.5]))
        );
        assert!(RadiiSpec::from_args(&["0.2".into(), "cor2".into()]).is_err());
        assert!(RadiiSpec::List(vec![1.0]).validate().is_err());
    }

    #[test]
    fn config_parses_named_and_listed_radii() {
        let c: CampaignConfig = serde_json::from_str(r#"{"radii": "tenths", "class": "thm2"}"#).unwrap();
        assert_eq!(c.radii, Some(RadiiSpec::Named(NamedGrid::Tenths)));
        let c: CampaignConfig = serde_json::from_str(r#"{"radii": [0.1, 0.2], "steps": ["eq9"]}"#).unwrap();
        assert_eq!(c.radii, Some(RadiiSpec::List(vec![0.1, 0.2])));
        assert!(serde_json::from_str::<CampaignConfig>(r#"{"colour": 1}"#).is_err());
    }

    #[test]
    fn hash_is_stable() {
        let c = CampaignConfig {
            count: Some(3),
            ..Default::default()
        };
        assert_eq!(config_hash(&c), config_hash(&c.clone()));
        assert_eq!(config_hash(&c).len(), 64);
    }
}
