//! Run configuration: an optional TOML file overlaid by command-line flags.

use anyhow::{Context, Result};
use primeavg::inequality_lab::FamilySpec;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub verify: Option<VerifyParams>,
    pub approx: Option<ApproxParams>,
    pub highlow: Option<HighLowParams>,
    pub improving: Option<ImprovingParams>,
    pub maximal: Option<MaximalParams>,
    #[serde(rename = "ramanujan-avg")]
    pub ramanujan_avg: Option<RamanujanAvgParams>,
    pub sw: Option<SwParams>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyParams {
    pub qmax: Option<u64>,
    pub ymax: Option<u64>,
    /// Skip the fixture comparisons.
    pub skip_fixtures: Option<bool>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct ApproxParams {
    pub N: Option<u64>,
    pub y: Option<u64>,
    pub b: Option<u64>,
    pub qcut: Option<u64>,
    pub M: Option<usize>,
    /// Window exponent for the near-zero error.
    pub J: Option<f64>,
    pub cutoff: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct HighLowParams {
    pub N: Option<u64>,
    pub y: Option<u64>,
    pub b: Option<u64>,
    pub Q: Option<Vec<u64>>,
    pub M: Option<usize>,
    pub qcut: Option<u64>,
    pub r: Option<f64>,
    pub families: Option<Vec<FamilySpec>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct ImprovingParams {
    pub N: Option<Vec<u64>>,
    pub y: Option<Vec<u64>>,
    pub b: Option<Vec<u64>>,
    pub r: Option<Vec<f64>>,
    pub families: Option<Vec<FamilySpec>>,
    pub adversarial: Option<bool>,
    pub floor_per_y: Option<u64>,
    pub stability_factor: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct MaximalParams {
    pub N: Option<Vec<u64>>,
    pub y: Option<u64>,
    pub b: Option<Vec<u64>>,
    pub r: Option<f64>,
    pub lambdas: Option<Vec<f64>>,
    pub families: Option<Vec<FamilySpec>>,
    pub floor_per_y: Option<u64>,
    pub qcut: Option<u64>,
    /// Largest allowed ratio between per-residue maxima.
    pub max_b_variation: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct RamanujanAvgParams {
    pub Q: Option<Vec<u64>>,
    pub M: Option<u64>,
    pub y: Option<u64>,
    pub b: Option<u64>,
    pub t: Option<u32>,
    pub max_exponent: Option<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct SwParams {
    pub x: Option<Vec<u64>>,
    pub y: Option<u64>,
    pub b: Option<u64>,
    pub J: Option<u32>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }
}

/// `flag` when given, else the file value.
pub fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

/// Like [`pick`] for list flags, where an empty list means "not given".
pub fn pick_list<T>(flag: Vec<T>, file: Option<Vec<T>>) -> Option<Vec<T>> {
    if flag.is_empty() {
        file
    } else {
        Some(flag)
    }
}

/// Environment override for a numeric setting.
pub fn env_u64(name: &str) -> Result<Option<u64>> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .with_context(|| format!("environment variable {name} = `{v}` is not an unsigned integer")),
        Err(_) => Ok(None),
    }
}
