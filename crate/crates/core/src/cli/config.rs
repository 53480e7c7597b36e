//! Run configuration: JSON ingestion, schema checks and canonical hashing.
//!
//! Every physical quantity carries its unit in the key name. Only the
//! numerical controls (`rtol`, `xtol`, grid sizes and ranges) have defaults;
//! physics inputs must be given explicitly.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::emission::{DEFAULT_RTOL, SPECTRUM_GRID_POINTS};
use crate::error::Error;
use crate::materials::{MaterialCatalog, MaterialRecord, MaterialSpec};
use crate::optimize::ConstraintSpec;

pub const DEFAULT_XTOL: f64 = 1e-6;
pub const DEFAULT_OMEGA_RATIO_GRID: GridRange = GridRange {
    min: 0.1,
    max: 30.0,
    points: 64,
};
pub const DEFAULT_R_PARALLEL_GRID: GridRange = GridRange {
    min: 1e-6,
    max: 100e-6,
    points: 64,
};
pub const DEFAULT_ECCENTRICITY_GRID: GridRange = GridRange {
    min: 0.01,
    max: 0.99,
    points: 50,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    Spectrum,
    Rate,
    Enhancement,
    SweepSize,
    SweepEcc,
    Optimize,
    Validate,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Spectrum,
        Command::Rate,
        Command::Enhancement,
        Command::SweepSize,
        Command::SweepEcc,
        Command::Optimize,
        Command::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Rate => "rate",
            Command::Enhancement => "enhancement",
            Command::SweepSize => "sweep-size",
            Command::SweepEcc => "sweep-ecc",
            Command::Optimize => "optimize",
            Command::Validate => "validate",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == name)
    }

    /// Top-level keys the command accepts besides `command`, `rtol` and `output_path`.
    fn keys(self) -> &'static [&'static str] {
        match self {
            Command::Spectrum => &["material", "geometry", "spin", "grids"],
            Command::Rate => &["material", "geometry", "spin"],
            Command::Enhancement => &["material", "geometry", "grids"],
            Command::SweepSize | Command::SweepEcc => &["material", "geometry", "spin", "grids"],
            Command::Optimize => &["material", "geometry", "spin", "xtol"],
            Command::Validate => &[],
        }
    }

    fn geometry_keys(self) -> &'static [&'static str] {
        match self {
            Command::Spectrum | Command::Rate | Command::Enhancement => {
                &["r_parallel_m", "eccentricity"]
            }
            Command::SweepSize => &["eccentricity"],
            Command::SweepEcc | Command::Optimize => &["r_parallel_m"],
            Command::Validate => &[],
        }
    }

    fn grid_keys(self) -> &'static [&'static str] {
        match self {
            Command::Spectrum => &["spectrum_points"],
            Command::Enhancement => &["omega_over_omega_t"],
            Command::SweepSize => &["r_parallel_m"],
            Command::SweepEcc => &["eccentricity"],
            _ => &[],
        }
    }

    fn needs_tip_speed(self) -> bool {
        matches!(
            self,
            Command::SweepSize | Command::SweepEcc | Command::Optimize
        )
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    /// Not valid JSON.
    Parse { path: PathBuf, message: String },
    /// Valid JSON that violates the schema; `key` is the dotted key path.
    Schema { key: String, message: String },
    UnknownMaterial { name: String, available: Vec<String> },
    /// Well-formed value rejected by the physics layer.
    Invalid { key: String, error: Error },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse { path, message } => {
                write!(f, "cannot parse {}: {message}", path.display())
            }
            ConfigError::Schema { key, message } => write!(f, "schema error at `{key}`: {message}"),
            ConfigError::UnknownMaterial { name, available } => write!(
                f,
                "unknown material `{name}` (catalog has: {})",
                available.join(", ")
            ),
            ConfigError::Invalid { key, error } => write!(f, "invalid value at `{key}`: {error}"),
        }
    }
}

impl std::error::Error for ConfigError {}

fn schema(key: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Schema {
        key: key.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    r_parallel_m: Option<f64>,
    eccentricity: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpin {
    omega_rad_s: Option<f64>,
    frequency_ghz: Option<f64>,
    tip_speed_m_s: Option<f64>,
    tip_speed_from_material: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrids {
    spectrum_points: Option<usize>,
    omega_over_omega_t: Option<GridRange>,
    r_parallel_m: Option<GridRange>,
    eccentricity: Option<GridRange>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    command: Option<String>,
    material: Option<Value>,
    geometry: Option<RawGeometry>,
    spin: Option<RawSpin>,
    grids: Option<RawGrids>,
    rtol: Option<f64>,
    xtol: Option<f64>,
    output_path: Option<String>,
}

/// How the rotation rate is fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpinInput {
    Omega { omega_rad_s: f64 },
    /// `Ω = 2π·10⁹·frequency_ghz`.
    FrequencyGhz { frequency_ghz: f64 },
    TipSpeed(ConstraintSpec),
}

impl SpinInput {
    /// Rotation rate for a particle of the given size.
    pub fn omega_for(&self, r_parallel: f64) -> f64 {
        match *self {
            SpinInput::Omega { omega_rad_s } => omega_rad_s,
            SpinInput::FrequencyGhz { frequency_ghz } => ghz_to_rad_s(frequency_ghz),
            SpinInput::TipSpeed(c) => c.tip_speed() / r_parallel,
        }
    }

    pub fn constraint(&self) -> Option<ConstraintSpec> {
        match *self {
            SpinInput::TipSpeed(c) => Some(c),
            _ => None,
        }
    }

    /// Human-readable record of the unit conversion, if one was applied.
    pub fn conversion_note(&self) -> Option<String> {
        match *self {
            SpinInput::FrequencyGhz { frequency_ghz } => Some(format!(
                "omega_rad_s = 2*pi*1e9*frequency_ghz = 2*pi*1e9*{frequency_ghz:e} = {:e}",
                ghz_to_rad_s(frequency_ghz)
            )),
            _ => None,
        }
    }
}

pub fn ghz_to_rad_s(frequency_ghz: f64) -> f64 {
    2.0 * PI * 1e9 * frequency_ghz
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub material: Option<MaterialSpec>,
    pub r_parallel: Option<f64>,
    pub eccentricity: Option<f64>,
    pub spin: Option<SpinInput>,
    pub spectrum_points: usize,
    pub omega_ratio_grid: GridRange,
    pub r_parallel_grid: GridRange,
    pub eccentricity_grid: GridRange,
    pub rtol: f64,
    pub xtol: f64,
    pub output_path: Option<PathBuf>,
    /// Input JSON with keys sorted and the effective command filled in.
    pub canonical: Value,
}

impl RunConfig {
    /// Configuration of a command that takes no inputs (e.g. `validate`).
    pub fn bare(command: Command) -> RunConfig {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), Value::String(command.name().into()));
        RunConfig {
            command,
            material: None,
            r_parallel: None,
            eccentricity: None,
            spin: None,
            spectrum_points: SPECTRUM_GRID_POINTS,
            omega_ratio_grid: DEFAULT_OMEGA_RATIO_GRID,
            r_parallel_grid: DEFAULT_R_PARALLEL_GRID,
            eccentricity_grid: DEFAULT_ECCENTRICITY_GRID,
            rtol: DEFAULT_RTOL,
            xtol: DEFAULT_XTOL,
            output_path: None,
            canonical: Value::Object(map),
        }
    }

    pub fn canonical_json(&self) -> String {
        canonical_string(&self.canonical)
    }

    pub fn config_hash(&self) -> String {
        hash_canonical(&self.canonical_json())
    }

    pub fn material(&self) -> &MaterialSpec {
        self.material.as_ref().expect("material checked at parse time")
    }

    pub fn r_parallel(&self) -> f64 {
        self.r_parallel.expect("r_parallel checked at parse time")
    }

    pub fn eccentricity(&self) -> f64 {
        self.eccentricity.expect("eccentricity checked at parse time")
    }

    pub fn spin(&self) -> SpinInput {
        self.spin.expect("spin checked at parse time")
    }
}

/// Recursively sort object keys.
pub fn canonicalize(value: &Value) -> Value {
    match value {
        Value::Object(map) => {
            let sorted: BTreeMap<&String, Value> =
                map.iter().map(|(k, v)| (k, canonicalize(v))).collect();
            Value::Object(sorted.into_iter().map(|(k, v)| (k.clone(), v)).collect())
        }
        Value::Array(items) => Value::Array(items.iter().map(canonicalize).collect()),
        other => other.clone(),
    }
}

/// Compact JSON with sorted keys.
pub fn canonical_string(value: &Value) -> String {
    serde_json::to_string(&canonicalize(value)).expect("JSON values always serialize")
}

/// Lower-case hex SHA-256.
pub fn hash_canonical(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Read and validate a configuration file for `command`.
pub fn parse_config(
    path: &Path,
    command: Command,
    catalog: &MaterialCatalog,
) -> Result<RunConfig, ParseFailure> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseFailure::Io {
        path: path.to_path_buf(),
        source: e.to_string(),
    })?;
    parse_config_str(&text, path, command, catalog).map_err(ParseFailure::Config)
}

/// Failure to obtain a [`RunConfig`]: either the file could not be read or
/// its contents were rejected.
#[derive(Debug, Clone, PartialEq)]
pub enum ParseFailure {
    Io { path: PathBuf, source: String },
    Config(ConfigError),
}

fn deserialize_at<T: for<'de> Deserialize<'de>>(value: Value, prefix: &str) -> Result<T, ConfigError> {
    serde_path_to_error::deserialize(value).map_err(|err| {
        let inner = err.path().to_string();
        let message = err.inner().to_string();
        let mut key = match (prefix.is_empty(), inner == ".") {
            (true, _) => inner,
            (false, true) => prefix.to_string(),
            (false, false) => format!("{prefix}.{inner}"),
        };
        // name the offending key itself for unknown fields
        if let Some(name) = message
            .strip_prefix("unknown field `")
            .and_then(|rest| rest.split('`').next())
        {
            if !key.ends_with(name) {
                key = if key == "." || key.is_empty() {
                    name.to_string()
                } else {
                    format!("{key}.{name}")
                };
            }
        }
        if key.is_empty() {
            key = ".".into();
        }
        schema(key, message)
    })
}

pub fn parse_config_str(
    text: &str,
    path: &Path,
    command: Command,
    catalog: &MaterialCatalog,
) -> Result<RunConfig, ConfigError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if !value.is_object() {
        return Err(schema(".", "configuration must be a JSON object"));
    }
    let raw: RawConfig = deserialize_at(value.clone(), "")?;

    if let Some(name) = &raw.command {
        match Command::from_name(name) {
            Some(c) if c == command => {}
            Some(c) => {
                return Err(schema(
                    "command",
                    format!("config is for `{c}` but `{command}` was invoked"),
                ))
            }
            None => return Err(schema("command", format!("unknown command `{name}`"))),
        }
    }

    let object = value.as_object().expect("checked above");
    for key in object.keys() {
        let common = ["command", "rtol", "output_path"].contains(&key.as_str());
        if !common && !command.keys().contains(&key.as_str()) {
            return Err(schema(key.clone(), format!("not used by `{command}`")));
        }
    }
    let nested_keys = |section: &str| -> Vec<String> {
        object
            .get(section)
            .and_then(Value::as_object)
            .map(|m| m.keys().cloned().collect())
            .unwrap_or_default()
    };
    for (section, allowed) in [
        ("geometry", command.geometry_keys()),
        ("grids", command.grid_keys()),
    ] {
        for key in nested_keys(section) {
            if !allowed.contains(&key.as_str()) {
                return Err(schema(
                    format!("{section}.{key}"),
                    format!("not used by `{command}`"),
                ));
            }
        }
    }

    let rtol = raw.rtol.unwrap_or(DEFAULT_RTOL);
    if !(rtol.is_finite() && rtol > 0.0) {
        return Err(schema("rtol", "must be positive"));
    }
    let xtol = raw.xtol.unwrap_or(DEFAULT_XTOL);

    let material = if command.keys().contains(&"material") {
        let value = raw
            .material
            .ok_or_else(|| schema("material", "missing required key"))?;
        Some(resolve_material(value, catalog)?)
    } else {
        None
    };

    let geometry = raw.geometry.unwrap_or_default();
    let require = |v: Option<f64>, key: &str| -> Result<Option<f64>, ConfigError> {
        if command.geometry_keys().contains(&key) {
            let v = v.ok_or_else(|| schema(format!("geometry.{key}"), "missing required key"))?;
            if !v.is_finite() {
                return Err(schema(format!("geometry.{key}"), "must be finite"));
            }
            Ok(Some(v))
        } else {
            Ok(None)
        }
    };
    let r_parallel = require(geometry.r_parallel_m, "r_parallel_m")?;
    let eccentricity = require(geometry.eccentricity, "eccentricity")?;

    let spin = if command.keys().contains(&"spin") {
        let raw_spin = raw
            .spin
            .ok_or_else(|| schema("spin", "missing required key"))?;
        Some(resolve_spin(raw_spin, command, material.as_ref())?)
    } else {
        None
    };

    let grids = raw.grids.unwrap_or_default();
    let spectrum_points = grids.spectrum_points.unwrap_or(SPECTRUM_GRID_POINTS);
    let omega_ratio_grid = grids.omega_over_omega_t.unwrap_or(DEFAULT_OMEGA_RATIO_GRID);
    let r_parallel_grid = grids.r_parallel_m.unwrap_or(DEFAULT_R_PARALLEL_GRID);
    let eccentricity_grid = grids.eccentricity.unwrap_or(DEFAULT_ECCENTRICITY_GRID);
    for (key, g) in [
        ("grids.omega_over_omega_t", omega_ratio_grid),
        ("grids.r_parallel_m", r_parallel_grid),
        ("grids.eccentricity", eccentricity_grid),
    ] {
        if !(g.min.is_finite() && g.max.is_finite() && g.min > 0.0 && g.min < g.max && g.points >= 2)
        {
            return Err(schema(key, "need 0 < min < max and points >= 2"));
        }
    }

    let mut canonical = canonicalize(&value);
    canonical
        .as_object_mut()
        .expect("object")
        .insert("command".into(), Value::String(command.name().into()));

    Ok(RunConfig {
        command,
        material,
        r_parallel,
        eccentricity,
        spin,
        spectrum_points,
        omega_ratio_grid,
        r_parallel_grid,
        eccentricity_grid,
        rtol,
        xtol,
        output_path: raw.output_path.map(PathBuf::from),
        canonical: canonicalize(&canonical),
    })
}

fn resolve_material(value: Value, catalog: &MaterialCatalog) -> Result<MaterialSpec, ConfigError> {
    match value {
        Value::String(name) => catalog.get(&name).cloned().ok_or_else(|| {
            ConfigError::UnknownMaterial {
                name,
                available: catalog.names().map(String::from).collect(),
            }
        }),
        Value::Object(_) => {
            let record: MaterialRecord = deserialize_at(value, "material")?;
            record.to_spec().map_err(|error| ConfigError::Invalid {
                key: "material".into(),
                error,
            })
        }
        _ => Err(schema(
            "material",
            "expected a catalog name or an inline material object",
        )),
    }
}

fn resolve_spin(
    raw: RawSpin,
    command: Command,
    material: Option<&MaterialSpec>,
) -> Result<SpinInput, ConfigError> {
    let given = [
        raw.omega_rad_s.is_some(),
        raw.frequency_ghz.is_some(),
        raw.tip_speed_m_s.is_some(),
        raw.tip_speed_from_material.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given != 1 {
        return Err(schema(
            "spin",
            "give exactly one of omega_rad_s, frequency_ghz, tip_speed_m_s, tip_speed_from_material",
        ));
    }
    let positive = |v: f64, key: &str| -> Result<f64, ConfigError> {
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(schema(format!("spin.{key}"), "must be finite and non-negative"))
        }
    };
    let spin = if let Some(w) = raw.omega_rad_s {
        SpinInput::Omega {
            omega_rad_s: positive(w, "omega_rad_s")?,
        }
    } else if let Some(f) = raw.frequency_ghz {
        SpinInput::FrequencyGhz {
            frequency_ghz: positive(f, "frequency_ghz")?,
        }
    } else if let Some(v) = raw.tip_speed_m_s {
        let c = ConstraintSpec::override_speed(v).map_err(|error| ConfigError::Invalid {
            key: "spin.tip_speed_m_s".into(),
            error,
        })?;
        SpinInput::TipSpeed(c)
    } else {
        if raw.tip_speed_from_material != Some(true) {
            return Err(schema("spin.tip_speed_from_material", "only `true` is meaningful"));
        }
        let material = material.expect("every spin-taking command has a material");
        let c = ConstraintSpec::from_material(material).map_err(|error| ConfigError::Invalid {
            key: "spin.tip_speed_from_material".into(),
            error,
        })?;
        SpinInput::TipSpeed(c)
    };
    if command.needs_tip_speed() && spin.constraint().is_none() {
        return Err(schema(
            "spin",
            format!("`{command}` needs tip_speed_m_s or tip_speed_from_material"),
        ));
    }
    Ok(spin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, command: Command) -> Result<RunConfig, ConfigError> {
        parse_config_str(text, Path::new("test.json"), command, &MaterialCatalog::builtin())
    }

    const SPECTRUM: &str = r#"{
        "command": "spectrum",
        "material": "BST",
        "geometry": {"r_parallel_m": 1.5e-7, "eccentricity": 0.8},
        "spin": {"omega_rad_s": 1.083e10}
    }"#;

    #[test]
    fn valid_spectrum_config() {
        let cfg = parse(SPECTRUM, Command::Spectrum).unwrap();
        assert_eq!(cfg.command, Command::Spectrum);
        assert_eq!(cfg.material().name, "BST");
        assert_eq!(cfg.spectrum_points, SPECTRUM_GRID_POINTS);
        assert_eq!(cfg.rtol, DEFAULT_RTOL);
        assert_eq!(cfg.spin().omega_for(1.0), 1.083e10);
    }

    #[test]
    fn typo_names_the_key() {
        let text = SPECTRUM.replace("\"eccentricity\"", "\"eccentrcity\"");
        match parse(&text, Command::Spectrum) {
            Err(ConfigError::Schema { key, .. }) => assert_eq!(key, "geometry.eccentrcity"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_material() {
        let text = SPECTRUM.replace("\"BST\"", "\"unobtainium\"");
        assert!(matches!(
            parse(&text, Command::Spectrum),
            Err(ConfigError::UnknownMaterial { name, .. }) if name == "unobtainium"
        ));
    }

    #[test]
    fn missing_physics_is_an_error() {
        let text = r#"{"material": "BST", "geometry": {"r_parallel_m": 1e-7}, "spin": {"omega_rad_s": 1.0}}"#;
        match parse(text, Command::Rate) {
            Err(ConfigError::Schema { key, .. }) => assert_eq!(key, "geometry.eccentricity"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spin_must_be_unique() {
        let text = SPECTRUM.replace(
            "\"omega_rad_s\": 1.083e10",
            "\"omega_rad_s\": 1.0, \"tip_speed_m_s\": 1.0",
        );
        assert!(matches!(
            parse(&text, Command::Spectrum),
            Err(ConfigError::Schema { key, .. }) if key == "spin"
        ));
    }

    #[test]
    fn sweeps_need_a_constraint() {
        let text = r#"{"material": "BST", "geometry": {"eccentricity": 0.6}, "spin": {"omega_rad_s": 1e10}}"#;
        assert!(parse(text, Command::SweepSize).is_err());
        let ok = r#"{"material": "cnt-bound", "geometry": {"eccentricity": 0.6}, "spin": {"tip_speed_from_material": true}}"#;
        let cfg = parse(ok, Command::SweepSize).unwrap();
        assert_eq!(cfg.spin().constraint().unwrap().tip_speed(), 1.5e5);
        let no_mech = ok.replace("cnt-bound", "BST");
        assert!(matches!(
            parse(&no_mech, Command::SweepSize),
            Err(ConfigError::Invalid { key, error: Error::MissingMechanicalData(_) })
                if key == "spin.tip_speed_from_material"
        ));
    }

    #[test]
    fn command_mismatch_and_unused_keys() {
        assert!(parse(SPECTRUM, Command::Rate).is_err());
        let text = SPECTRUM.replace("\"command\": \"spectrum\",", "\"xtol\": 1e-3,");
        assert!(matches!(
            parse(&text, Command::Spectrum),
            Err(ConfigError::Schema { key, .. }) if key == "xtol"
        ));
    }

    #[test]
    fn frequency_conversion_is_recorded() {
        let text = SPECTRUM.replace("\"omega_rad_s\": 1.083e10", "\"frequency_ghz\": 5.2");
        let cfg = parse(&text, Command::Spectrum).unwrap();
        assert_eq!(cfg.spin().omega_for(1.0), 2.0 * PI * 1e9 * 5.2);
        assert!(cfg.spin().conversion_note().unwrap().contains("2*pi*1e9"));
    }

    #[test]
    fn inline_material() {
        let text = SPECTRUM.replace(
            "\"BST\"",
            r#"{"name": "glass", "model": "constant", "eps_static": 2.25}"#,
        );
        let cfg = parse(&text, Command::Spectrum).unwrap();
        assert_eq!(cfg.material().dielectric.static_permittivity(), 2.25);
        let bad = text.replace("eps_static", "eps_statik");
        assert!(matches!(
            parse(&bad, Command::Spectrum),
            Err(ConfigError::Schema { key, .. }) if key.starts_with("material")
        ));
    }

    #[test]
    fn hash_ignores_key_order() {
        let a = parse(SPECTRUM, Command::Spectrum).unwrap();
        let reordered = r#"{"spin": {"omega_rad_s": 1.083e10},
            "geometry": {"eccentricity": 0.8, "r_parallel_m": 1.5e-7},
            "material": "BST", "command": "spectrum"}"#;
        let b = parse(reordered, Command::Spectrum).unwrap();
        assert_eq!(a.config_hash(), b.config_hash());
        assert_eq!(a.config_hash().len(), 64);
        let c = parse(&SPECTRUM.replace("0.8", "0.7"), Command::Spectrum).unwrap();
        assert_ne!(a.config_hash(), c.config_hash());
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(
            parse("{\"material\": ", Command::Rate),
            Err(ConfigError::Parse { .. })
        ));
    }
}
