//! Configuration loading: TOML document → validated parameter set.
//!
//! Every section and field is optional; missing values take the built-in
//! defaults. Precedence is built-in defaults < file < command-line
//! overrides; this module covers the first two, callers apply the third.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::caster::CasterSpec;
use crate::cycle::CyclePlan;
use crate::error::{Error, Result};
use crate::forelimb::ForelimbSpec;
use crate::quantities::{BitGeometry, GalleConstants, MotorSpec, SoilSpec};

/// The full parameter set: soil, motor, bit geometry, penetration-rate
/// constants, caster, forelimb, and cycle plan.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub soil: SoilSpec,
    pub motor: MotorSpec,
    pub bit: BitGeometry,
    pub galle: GalleConstants,
    pub caster: CasterSpec,
    pub forelimb: ForelimbSpec,
    pub cycle: CyclePlan,
}

/// Parse and validate a configuration document. An empty document yields
/// the full default set.
pub fn load_config(source: &str) -> Result<Config> {
    let config: Config = toml::from_str(source).map_err(|e| Error::ConfigParse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        load_config(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.soil.validate()?;
        self.motor.validate()?;
        self.bit.validate()?;
        self.galle.validate()?;
        self.caster.validate()?;
        self.forelimb.validate()?;
        self.cycle.validate()
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::ConfigParse(e.to_string()))
    }
}
