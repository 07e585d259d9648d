//! JSON run configuration mirroring the instance-spec fields in snake_case.

use serde::{Deserialize, Serialize};

use circumfeas_core::experiments::{Family, InstanceSpec, PhiSpec};
use circumfeas_core::StopRule;

use crate::error::CliError;

/// One instance run: the family plus its parameters, output options
/// included. Unknown keys are rejected so typos surface as exit-code-2
/// errors naming the field.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quad_diag: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub secant_height: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<String>,
    /// `csv` or `json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

impl RunConfig {
    pub fn from_path(path: &std::path::Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    fn phi_spec(&self) -> Result<Option<PhiSpec>, CliError> {
        let Some(name) = self.phi.as_deref() else {
            return Ok(None);
        };
        let need = |field: &str, v: Option<f64>| {
            v.ok_or_else(|| CliError::Config(format!("phi '{name}' requires the '{field}' field")))
        };
        Ok(Some(match name {
            "power" => PhiSpec::Power {
                alpha: need("alpha", self.alpha)?,
            },
            "ballcap" => PhiSpec::Ballcap,
            "flat" => PhiSpec::Flat,
            "shifted_power" => PhiSpec::ShiftedPower {
                alpha: need("alpha", self.alpha)?,
                c: need("c", self.c)?,
            },
            "cosh_shift" => PhiSpec::CoshShift {
                c: need("c", self.c)?,
            },
            other => {
                return Err(CliError::Config(format!(
                    "phi: unknown profile '{other}' (expected power, ballcap, flat, \
                     shifted_power or cosh_shift)"
                )))
            }
        }))
    }

    pub fn to_spec(&self) -> Result<InstanceSpec, CliError> {
        let family = Family::parse(&self.family).map_err(|e| CliError::Config(e.to_string()))?;
        let mut stop = StopRule::default();
        if let Some(m) = self.max_iter {
            stop.max_iter = m;
        }
        if let Some(t) = self.tol {
            if t.is_nan() || t <= 0.0 {
                return Err(CliError::Config("tol: must be positive".into()));
            }
            stop.tol_abs = t;
        }
        stop.validate()
            .map_err(|e| CliError::Config(format!("tol: {e}")))?;
        let mut spec = InstanceSpec::new(family);
        spec.phi = self.phi_spec()?;
        spec.theta = self.theta;
        spec.n = self.n;
        spec.m = self.m;
        spec.quad_diag = self.quad_diag.clone();
        spec.secant_height = self.secant_height;
        spec.x0 = self.x0.clone();
        spec.seed = self.seed.unwrap_or(0);
        spec.stop = stop;
        spec.label = self.label.clone();
        Ok(spec)
    }

    /// Output format tag, `csv` by default.
    pub fn output_format(&self) -> Result<OutputFormat, CliError> {
        match self.format.as_deref() {
            None | Some("csv") => Ok(OutputFormat::Csv),
            Some("json") => Ok(OutputFormat::Json),
            Some(other) => Err(CliError::Config(format!(
                "format: expected 'csv' or 'json', got '{other}'"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"family": "two_lines", "theta": 0.5}"#).unwrap();
        let spec = cfg.to_spec().unwrap();
        assert_eq!(spec.family, Family::TwoLines);
        assert_eq!(spec.theta, Some(0.5));
    }

    #[test]
    fn rejects_unknown_field() {
        let cfg: Result<RunConfig, _> =
            serde_json::from_str(r#"{"family": "two_lines", "thata": 0.5}"#);
        let msg = cfg.unwrap_err().to_string();
        assert!(msg.contains("thata"), "{msg}");
    }

    #[test]
    fn rejects_unknown_family_naming_the_field() {
        let cfg: RunConfig = serde_json::from_str(r#"{"family": "mystery"}"#).unwrap();
        let err = cfg.to_spec().unwrap_err().to_string();
        assert!(err.contains("family"), "{err}");
    }

    #[test]
    fn phi_requires_its_parameters() {
        let cfg: RunConfig =
            serde_json::from_str(r#"{"family": "family2_radial", "phi": "shifted_power"}"#)
                .unwrap();
        let err = cfg.to_spec().unwrap_err().to_string();
        assert!(err.contains("alpha"), "{err}");
    }
}
