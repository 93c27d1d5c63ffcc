//! Effective settings: flags, then the optional TOML file, then defaults.

use std::path::Path;

use cpshift_core::NumericsConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::args::{CommonArgs, Format, Units};
use crate::error::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub units: Option<Units>,
    pub format: Option<Format>,
    pub timing: Option<bool>,
    pub numerics: Option<NumericsConfig>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub numerics: NumericsConfig,
    pub units: Units,
    /// `None` lets each command pick its natural format.
    pub format: Option<Format>,
    pub timing: bool,
    pub fingerprint: String,
}

pub fn resolve(args: &CommonArgs) -> Result<Settings, CliError> {
    let file = match &args.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let mut numerics = file.numerics.unwrap_or_default();
    if let Some(v) = args.rel_tol {
        numerics.rel_tol = v;
    }
    if let Some(v) = args.abs_tol {
        numerics.abs_tol = v;
    }
    if let Some(v) = args.series_tol {
        numerics.series.rel_tail_tol = v;
    }
    if let Some(v) = args.max_terms {
        numerics.series.max_terms = v;
    }
    numerics.validate()?;
    let units = args.units.or(file.units).unwrap_or(Units::Reduced);
    Ok(Settings {
        fingerprint: fingerprint(&numerics, units),
        numerics,
        units,
        format: args.format.or(file.format),
        timing: args.timing || file.timing.unwrap_or(false),
    })
}

#[derive(Serialize)]
struct Fingerprinted<'a> {
    numerics: &'a NumericsConfig,
    units: Units,
}

/// First 16 hex digits of the SHA-256 of the canonical JSON of everything
/// that can change a computed number.
pub fn fingerprint(numerics: &NumericsConfig, units: Units) -> String {
    let canonical = serde_json::to_string(&Fingerprinted { numerics, units }).expect("plain data");
    let digest = Sha256::digest(canonical.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}
