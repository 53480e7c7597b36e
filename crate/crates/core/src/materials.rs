//! Dielectric response models and material mechanical data.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable overriding the built-in material catalog path.
pub const CATALOG_ENV: &str = "SPINDCE_CATALOG";

const BUILTIN_CATALOG: &str = include_str!("../data/materials.json");

/// Relative permittivity model of an isotropic material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel {
    /// Dispersionless `ε(ω) = eps_static`.
    Constant { eps_static: f64 },
    /// Single-resonance Lorentz oscillator
    ///
    /// `ε(ω) = ε_UV + (ε(0) − ε_UV) / (1 − (ω/ω_T)² + iωγ/ω_T²)`
    LorentzSingle {
        eps_uv: f64,
        eps_static: f64,
        /// Transverse resonance frequency (rad/s).
        omega_t: f64,
        /// Damping rate (1/s).
        gamma: f64,
    },
}

impl DielectricModel {
    pub fn constant(eps_static: f64) -> Result<Self> {
        let model = DielectricModel::Constant { eps_static };
        model.validate()?;
        Ok(model)
    }

    pub fn lorentz(eps_uv: f64, eps_static: f64, omega_t: f64, gamma: f64) -> Result<Self> {
        let model = DielectricModel::LorentzSingle {
            eps_uv,
            eps_static,
            omega_t,
            gamma,
        };
        model.validate()?;
        Ok(model)
    }

    /// Barium strontium titanate oscillator parameters.
    pub fn bst() -> Self {
        DielectricModel::LorentzSingle {
            eps_uv: 2.896,
            eps_static: 7.1,
            omega_t: 5.7e9,
            gamma: 2.8e8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        match *self {
            DielectricModel::Constant { eps_static } => {
                if !(eps_static.is_finite() && eps_static >= 1.0) {
                    return bad(format!("eps_static must be finite and >= 1, got {eps_static}"));
                }
            }
            DielectricModel::LorentzSingle {
                eps_uv,
                eps_static,
                omega_t,
                gamma,
            } => {
                if !(eps_uv.is_finite() && eps_uv >= 1.0) {
                    return bad(format!("eps_uv must be finite and >= 1, got {eps_uv}"));
                }
                if !(eps_static.is_finite() && eps_static > eps_uv) {
                    return bad(format!(
                        "eps_static must exceed eps_uv ({eps_uv}), got {eps_static}"
                    ));
                }
                if !(omega_t.is_finite() && omega_t > 0.0) {
                    return bad(format!("omega_T must be positive, got {omega_t}"));
                }
                if !(gamma.is_finite() && gamma >= 0.0) {
                    return bad(format!("gamma must be non-negative, got {gamma}"));
                }
            }
        }
        Ok(())
    }

    /// Complex relative permittivity at angular frequency `omega` (rad/s).
    ///
    /// Negative frequencies are allowed and satisfy `ε(−ω) = conj(ε(ω))`.
    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        if !omega.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "permittivity requested at non-finite frequency {omega}"
            )));
        }
        match *self {
            DielectricModel::Constant { eps_static } => Ok(Complex64::new(eps_static, 0.0)),
            DielectricModel::LorentzSingle {
                eps_uv,
                eps_static,
                omega_t,
                gamma,
            } => {
                let x = omega / omega_t;
                let denom = Complex64::new(1.0 - x * x, omega * gamma / (omega_t * omega_t));
                if denom.re == 0.0 && denom.im == 0.0 {
                    return Err(Error::OutOfDomain(format!(
                        "lossless Lorentz pole: omega = omega_T = {omega_t:e} rad/s with gamma = 0"
                    )));
                }
                Ok(Complex64::new(eps_uv, 0.0) + (eps_static - eps_uv) / denom)
            }
        }
    }

    pub fn static_permittivity(&self) -> f64 {
        match *self {
            DielectricModel::Constant { eps_static } => eps_static,
            DielectricModel::LorentzSingle { eps_static, .. } => eps_static,
        }
    }

    /// Transverse resonance frequency, if the model has one.
    pub fn omega_t(&self) -> Option<f64> {
        match *self {
            DielectricModel::Constant { .. } => None,
            DielectricModel::LorentzSingle { omega_t, .. } => Some(omega_t),
        }
    }

    pub fn is_lossless_resonant(&self) -> bool {
        matches!(*self, DielectricModel::LorentzSingle { gamma, .. } if gamma == 0.0)
    }

    /// Frequency at which the undamped real permittivity reaches `target`,
    /// i.e. the pole of a response with denominator `ε − target`.
    ///
    /// Only targets below `ε_UV` are reachable above `ω_T`; anything else
    /// returns `None`.
    pub fn frequency_for_permittivity(&self, target: f64) -> Option<f64> {
        match *self {
            DielectricModel::Constant { .. } => None,
            DielectricModel::LorentzSingle {
                eps_uv,
                eps_static,
                omega_t,
                ..
            } => {
                if target >= eps_uv {
                    return None;
                }
                let q = 1.0 + (eps_static - eps_uv) / (eps_uv - target);
                Some(omega_t * q.sqrt())
            }
        }
    }
}

/// A named material: dielectric response plus optional mechanical data.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialSpec {
    pub name: String,
    pub dielectric: DielectricModel,
    /// Mass density (kg/m³).
    pub density: Option<f64>,
    /// Ultimate tensile strength (Pa).
    pub uts: Option<f64>,
    /// Burst speed (m/s) taking precedence over `sqrt(uts/density)`.
    pub burst_speed_override: Option<f64>,
}

impl MaterialSpec {
    pub fn new(name: impl Into<String>, dielectric: DielectricModel) -> Self {
        MaterialSpec {
            name: name.into(),
            dielectric,
            density: None,
            uts: None,
            burst_speed_override: None,
        }
    }

    pub fn with_mechanics(mut self, density: f64, uts: f64) -> Self {
        self.density = Some(density);
        self.uts = Some(uts);
        self
    }

    pub fn with_burst_speed(mut self, burst_speed: f64) -> Self {
        self.burst_speed_override = Some(burst_speed);
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.dielectric.validate()?;
        if let Some(rho) = self.density {
            if !(rho.is_finite() && rho > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{}: density must be positive, got {rho}",
                    self.name
                )));
            }
        }
        if let Some(uts) = self.uts {
            if !(uts.is_finite() && uts >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{}: uts must be non-negative, got {uts}",
                    self.name
                )));
            }
        }
        if let Some(vb) = self.burst_speed_override {
            if !(vb.is_finite() && vb >= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{}: burst speed must be non-negative, got {vb}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    /// Maximum rim speed: the override if present, else `sqrt(uts/density)`.
    pub fn burst_speed(&self) -> Result<f64> {
        if let Some(vb) = self.burst_speed_override {
            return Ok(vb);
        }
        match (self.uts, self.density) {
            (Some(uts), Some(rho)) => Ok((uts / rho).sqrt()),
            _ => Err(Error::MissingMechanicalData(self.name.clone())),
        }
    }
}

/// On-disk representation of one catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialRecord {
    pub name: String,
    pub model: ModelKind,
    pub eps_static: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_uv: Option<f64>,
    #[serde(rename = "omega_T_rad_s", default, skip_serializing_if = "Option::is_none")]
    pub omega_t_rad_s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_kg_m3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uts_pa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub burst_speed_m_s: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Constant,
    Lorentz,
}

impl MaterialRecord {
    pub fn to_spec(&self) -> Result<MaterialSpec> {
        let dielectric = match self.model {
            ModelKind::Constant => {
                if self.eps_uv.is_some() || self.omega_t_rad_s.is_some() || self.gamma_hz.is_some()
                {
                    return Err(Error::InvalidArgument(format!(
                        "{}: eps_uv, omega_T_rad_s and gamma_hz only apply to the lorentz model",
                        self.name
                    )));
                }
                DielectricModel::constant(self.eps_static)?
            }
            ModelKind::Lorentz => {
                let need = |v: Option<f64>, key: &str| {
                    v.ok_or_else(|| {
                        Error::InvalidArgument(format!("{}: lorentz model requires {key}", self.name))
                    })
                };
                DielectricModel::lorentz(
                    need(self.eps_uv, "eps_uv")?,
                    self.eps_static,
                    need(self.omega_t_rad_s, "omega_T_rad_s")?,
                    need(self.gamma_hz, "gamma_hz")?,
                )?
            }
        };
        let spec = MaterialSpec {
            name: self.name.clone(),
            dielectric,
            density: self.density_kg_m3,
            uts: self.uts_pa,
            burst_speed_override: self.burst_speed_m_s,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<&MaterialSpec> for MaterialRecord {
    fn from(spec: &MaterialSpec) -> Self {
        let (model, eps_static, eps_uv, omega_t, gamma) = match spec.dielectric {
            DielectricModel::Constant { eps_static } => {
                (ModelKind::Constant, eps_static, None, None, None)
            }
            DielectricModel::LorentzSingle {
                eps_uv,
                eps_static,
                omega_t,
                gamma,
            } => (
                ModelKind::Lorentz,
                eps_static,
                Some(eps_uv),
                Some(omega_t),
                Some(gamma),
            ),
        };
        MaterialRecord {
            name: spec.name.clone(),
            model,
            eps_static,
            eps_uv,
            omega_t_rad_s: omega_t,
            gamma_hz: gamma,
            density_kg_m3: spec.density,
            uts_pa: spec.uts,
            burst_speed_m_s: spec.burst_speed_override,
        }
    }
}

/// Named collection of materials loaded from a JSON array of [`MaterialRecord`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialCatalog {
    materials: Vec<MaterialSpec>,
}

impl MaterialCatalog {
    pub fn from_json_str(text: &str) -> std::result::Result<Self, CatalogError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let records: Vec<MaterialRecord> =
            serde_path_to_error::deserialize(de).map_err(|e| CatalogError::Parse {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        let mut materials: Vec<MaterialSpec> = Vec::with_capacity(records.len());
        for record in &records {
            if materials.iter().any(|m| m.name == record.name) {
                return Err(CatalogError::DuplicateName(record.name.clone()));
            }
            materials.push(record.to_spec().map_err(CatalogError::Invalid)?);
        }
        Ok(MaterialCatalog { materials })
    }

    pub fn load(path: &Path) -> std::result::Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// The catalog compiled into the binary (BST, SiO2, cnt-bound).
    pub fn builtin() -> Self {
        Self::from_json_str(BUILTIN_CATALOG).expect("built-in catalog is valid")
    }

    /// `$SPINDCE_CATALOG` if set, otherwise the built-in catalog.
    pub fn from_env() -> std::result::Result<Self, CatalogError> {
        match std::env::var_os(CATALOG_ENV) {
            Some(path) => Self::load(Path::new(&path)),
            None => Ok(Self::builtin()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&MaterialSpec> {
        self.materials.iter().find(|m| m.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.materials.iter().map(|m| m.name.as_str())
    }

    pub fn len(&self) -> usize {
        self.materials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.materials.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog I/O error: {0}")]
    Io(String),
    #[error("catalog parse error at `{path}`: {message}")]
    Parse { path: String, message: String },
    #[error("duplicate material name `{0}` in catalog")]
    DuplicateName(String),
    #[error("invalid catalog entry: {0}")]
    Invalid(Error),
}
