use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use zeno_core::{Quantity, Unit, UnitKind};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Gate,
    Absorber,
    Enhance,
    Design,
    Tables,
    Curve,
    Demo,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Gate => "gate",
            CommandKind::Absorber => "absorber",
            CommandKind::Enhance => "enhance",
            CommandKind::Design => "design",
            CommandKind::Tables => "tables",
            CommandKind::Curve => "curve",
            CommandKind::Demo => "demo",
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything needed to reproduce one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default)]
    pub parameters: BTreeMap<String, Quantity>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        Self { command, mode: None, parameters: BTreeMap::new(), format: Format::Csv, output: None, seed: 0 }
    }

    /// SHA-256 of the canonical JSON form, ignoring the output path.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output = None;
        let bytes = serde_json::to_vec(&canonical).expect("config serialises");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises") + "\n"
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: CommandKind,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    parameters: BTreeMap<String, serde_json::Value>,
    #[serde(default)]
    format: Format,
    #[serde(default)]
    output: Option<PathBuf>,
    #[serde(default)]
    seed: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuantity {
    value: f64,
    unit: String,
}

pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { context: format!("reading {}", path.display()), source })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
    let mut parameters = BTreeMap::new();
    for (key, value) in raw.parameters {
        let q: RawQuantity = serde_json::from_value(value).map_err(|e| CliError::param(&key, e))?;
        let unit: Unit = q.unit.parse().map_err(|e| CliError::param(&key, e))?;
        parameters.insert(key, Quantity::new(q.value, unit));
    }
    Ok(RunConfig { command: raw.command, mode: raw.mode, parameters, format: raw.format, output: raw.output, seed: raw.seed })
}

/// Parses `"1e9"`, `"3e12 s^-1"` or `"500nm"`; a bare number takes `default_unit`.
pub fn parse_quantity(key: &str, text: &str, default_unit: Unit) -> Result<Quantity, CliError> {
    let t = text.trim();
    let split = (1..=t.len()).rev().filter(|&i| t.is_char_boundary(i)).find(|&i| t[..i].parse::<f64>().is_ok());
    let Some(i) = split else {
        return Err(CliError::param(key, format!("cannot read a number from `{text}`")));
    };
    let value: f64 = t[..i].parse().expect("checked");
    let rest = t[i..].trim();
    let unit = if rest.is_empty() { default_unit } else { rest.parse().map_err(|e| CliError::param(key, e))? };
    Ok(Quantity::new(value, unit))
}

/// Accepted unit kinds and optional default for one parameter key.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kinds: &'static [UnitKind],
    pub unit: Unit,
    pub default: Option<f64>,
}

pub const DIMLESS: &[UnitKind] = &[UnitKind::Dimensionless];
pub const SPECTRAL: &[UnitKind] = &[UnitKind::Energy, UnitKind::AngularFrequency];
pub const PHOTON: &[UnitKind] = &[UnitKind::Energy, UnitKind::AngularFrequency, UnitKind::Length];
pub const LENGTH: &[UnitKind] = &[UnitKind::Length];
pub const AREA: &[UnitKind] = &[UnitKind::Area];
pub const INTENSITY: &[UnitKind] = &[UnitKind::Intensity];

impl ParamSpec {
    pub const fn new(key: &'static str, kinds: &'static [UnitKind], unit: Unit, default: Option<f64>) -> Self {
        Self { key, kinds, unit, default }
    }

    pub const fn count(key: &'static str, default: Option<f64>) -> Self {
        Self::new(key, DIMLESS, Unit::Dimensionless, default)
    }
}

/// Checks keys and unit kinds against `specs` and fills in defaults.
pub fn resolve(params: &BTreeMap<String, Quantity>, specs: &[ParamSpec]) -> Result<BTreeMap<String, Quantity>, CliError> {
    let mut out = BTreeMap::new();
    for (key, q) in params {
        let Some(spec) = specs.iter().find(|s| s.key == key) else {
            let known: Vec<&str> = specs.iter().map(|s| s.key).collect();
            return Err(CliError::param(key, format!("unknown parameter; expected one of {}", known.join(", "))));
        };
        if !spec.kinds.contains(&q.kind()) {
            let kinds: Vec<String> = spec.kinds.iter().map(|k| k.to_string()).collect();
            return Err(CliError::param(key, format!("unit `{}` is {}, expected {}", q.unit, q.kind(), kinds.join(" or "))));
        }
        if !q.value.is_finite() {
            return Err(CliError::param(key, "value must be finite"));
        }
        out.insert(key.clone(), *q);
    }
    for spec in specs {
        if let (false, Some(v)) = (out.contains_key(spec.key), spec.default) {
            out.insert(spec.key.to_string(), Quantity::new(v, spec.unit));
        }
    }
    Ok(out)
}

/// Typed read access to resolved parameters.
pub struct Params<'a>(pub &'a BTreeMap<String, Quantity>);

impl Params<'_> {
    pub fn opt(&self, key: &str, unit: Unit) -> Result<Option<f64>, CliError> {
        self.0
            .get(key)
            .map(|q| q.to(unit).map(|c| c.value).map_err(|e| CliError::param(key, e)))
            .transpose()
    }

    pub fn get(&self, key: &str, unit: Unit) -> Result<f64, CliError> {
        self.opt(key, unit)?.ok_or_else(|| CliError::param(key, "missing"))
    }

    pub fn real(&self, key: &str) -> Result<f64, CliError> {
        self.get(key, Unit::Dimensionless)
    }

    pub fn count(&self, key: &str) -> Result<u64, CliError> {
        let v = self.real(key)?;
        if v < 0.0 || v.fract() != 0.0 || v > 2f64.powi(53) {
            return Err(CliError::param(key, format!("expected a non-negative integer, got {v}")));
        }
        Ok(v as u64)
    }

    pub fn count_u32(&self, key: &str) -> Result<u32, CliError> {
        u32::try_from(self.count(key)?).map_err(|_| CliError::param(key, "too large"))
    }

    pub fn flag(&self, key: &str) -> Result<bool, CliError> {
        match self.real(key)? {
            v if v == 0.0 => Ok(false),
            v if v == 1.0 => Ok(true),
            v => Err(CliError::param(key, format!("expected 0 or 1, got {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantity_strings() {
        let q = parse_quantity("x", "1e9", Unit::Dimensionless).unwrap();
        assert_eq!(q, Quantity::new(1e9, Unit::Dimensionless));
        let q = parse_quantity("x", "3e12 s^-1", Unit::ElectronVolt).unwrap();
        assert_eq!(q, Quantity::new(3e12, Unit::PerSecond));
        let q = parse_quantity("x", "500nm", Unit::ElectronVolt).unwrap();
        assert_eq!(q, Quantity::new(500.0, Unit::Nanometer));
        assert!(parse_quantity("x", "fast", Unit::ElectronVolt).is_err());
        assert!(parse_quantity("x", "2 parsecs", Unit::ElectronVolt).is_err());
    }

    #[test]
    fn resolve_checks_kind_and_key() {
        let specs = [ParamSpec::count("N", Some(10.0))];
        let mut p = BTreeMap::new();
        p.insert("N".to_string(), Quantity::new(3.0, Unit::ElectronVolt));
        let err = resolve(&p, &specs).unwrap_err();
        assert!(err.to_string().contains("`N`"));
        p.clear();
        p.insert("M".to_string(), Quantity::dimensionless(3.0));
        assert!(resolve(&p, &specs).unwrap_err().to_string().contains("`M`"));
        let r = resolve(&BTreeMap::new(), &specs).unwrap();
        assert_eq!(r["N"], Quantity::dimensionless(10.0));
    }

    #[test]
    fn config_round_trip() {
        let text = r#"{"command":"demo","parameters":{"N":{"value":1,"unit":"dimensionless"}}}"#;
        let c = parse_config(text).unwrap();
        assert_eq!(parse_config(&c.to_json()).unwrap(), c);
        assert!(parse_config(r#"{"command":"demo","extra":1}"#).is_err());
        let bad = r#"{"command":"demo","parameters":{"N":{"value":1,"unit":"furlong"}}}"#;
        assert!(parse_config(bad).unwrap_err().to_string().contains("`N`"));
    }

    #[test]
    fn hash_ignores_output() {
        let mut a = RunConfig::new(CommandKind::Demo);
        let h = a.hash();
        a.output = Some(PathBuf::from("x.csv"));
        assert_eq!(a.hash(), h);
        a.seed = 1;
        assert_ne!(a.hash(), h);
    }
}
