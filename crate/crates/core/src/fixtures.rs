//! Versioned fixture constants and run provenance.

use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// Text of the bundled fixtures file.
pub const FIXTURES_TOML: &str = include_str!("../fixtures/fixtures.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    UpperBound,
    LowerBound,
    Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub value: f64,
    pub kind: FixtureKind,
    pub tolerance: f64,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub measured: f64,
    pub fixture: f64,
    pub kind: FixtureKind,
    pub tolerance: f64,
    pub passed: bool,
}

impl Fixture {
    pub fn accepts(&self, measured: f64) -> bool {
        if !measured.is_finite() {
            return false;
        }
        match self.kind {
            FixtureKind::UpperBound => measured <= self.value * (1.0 + self.tolerance),
            FixtureKind::LowerBound => measured >= self.value * (1.0 - self.tolerance),
            FixtureKind::Value => (measured - self.value).abs() <= self.tolerance * self.value.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixtures {
    pub version: u32,
    pub fixtures: BTreeMap<String, Fixture>,
}

impl Fixtures {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| invalid("fixtures", e.to_string()))
    }

    /// The bundled fixtures.
    pub fn bundled() -> Self {
        Self::parse(FIXTURES_TOML).expect("bundled fixtures parse")
    }

    pub fn get(&self, name: &str) -> Result<&Fixture> {
        self.fixtures
            .get(name)
            .ok_or_else(|| invalid("fixture", format!("no fixture named `{name}`")))
    }

    pub fn value(&self, name: &str) -> Result<f64> {
        Ok(self.get(name)?.value)
    }

    pub fn check(&self, name: &str, measured: f64) -> Result<FixtureCheck> {
        let f = self.get(name)?;
        Ok(FixtureCheck {
            name: name.to_string(),
            measured,
            fixture: f.value,
            kind: f.kind,
            tolerance: f.tolerance,
            passed: f.accepts(measured),
        })
    }
}

/// Hex SHA-256 of a text.
pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Library version and the hash of the fixtures a run was checked against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub version: String,
    pub fixture_version: u32,
    pub fixture_hash: String,
}

impl Provenance {
    pub fn current() -> Self {
        Provenance {
            version: format!("primeavg-{}", env!("CARGO_PKG_VERSION")),
            fixture_version: Fixtures::bundled().version,
            fixture_hash: sha256_hex(FIXTURES_TOML),
        }
    }
}
