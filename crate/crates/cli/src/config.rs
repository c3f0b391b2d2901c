//! JSON run configuration.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "scenario": "fig3",
//!   "circuit": {
//!     "source": {"kind": "sine", "amplitude": 5.0, "frequency": 1.0},
//!     "series_resistance": 2000.0,
//!     "device": {"r_on": 100.0, "r_off": 16000.0, "k": 10000.0, "r_init": 11000.0},
//!     "window": {"kind": "joglekar", "p": 10},
//!     "dt": 1e-4,
//!     "duration": 1.0
//!   },
//!   "output": {"path": "run.csv"},
//!   "compare": {"windows": [{"kind": "joglekar", "p": 10}, {"kind": "fuzzy"}]}
//! }
//! ```
//!
//! With a `scenario`, every circuit field is optional and overrides the
//! preset; without one, all of them are required.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use memfuzz_core::fuzzy::{defaults, FuzzySystem, FuzzySystemDoc};
use memfuzz_core::{CircuitConfig, DeviceParams, Waveform, WindowSpec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::presets::Preset;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Preset>,
    #[serde(default)]
    pub circuit: CircuitDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare: Option<CompareDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputDoc {
    pub path: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareDoc {
    pub windows: Vec<WindowDoc>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series_resistance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub device: Option<DeviceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_on: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_off: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Initial state; mutually exclusive with `r_init`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_init: Option<f64>,
    /// Initial memristance; mutually exclusive with `x_init`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_init: Option<f64>,
}

fn one() -> f64 {
    1.0
}

fn zero() -> f64 {
    0.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceDoc {
    Sine {
        amplitude: f64,
        #[serde(default = "one")]
        frequency: f64,
        #[serde(default = "zero")]
        phase: f64,
        #[serde(default = "zero")]
        offset: f64,
    },
    Constant {
        level: f64,
    },
    Piecewise {
        points: Vec<(f64, f64)>,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FuzzyWindowDoc {
    /// Inline system document; the default rule base when both this and
    /// `system_file` are absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<FuzzySystemDoc<f64>>,
    /// Path to a system document, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WindowDoc {
    None,
    Strukov,
    Joglekar { p: u32 },
    Biolek { p: u32 },
    Prodromakis { p: f64, j: f64 },
    Fuzzy(FuzzyWindowDoc),
    FuzzyThreshold(FuzzyWindowDoc),
}

impl WindowDoc {
    /// Builds the window; `base_dir` anchors relative `system_file` paths.
    pub fn resolve(&self, base_dir: &Path) -> Result<WindowSpec<f64>> {
        let invalid = |e: memfuzz_core::Error| CliError::Validation(e.to_string());
        match self {
            Self::None => Ok(WindowSpec::None),
            Self::Strukov => Ok(WindowSpec::Strukov),
            Self::Joglekar { p } => WindowSpec::joglekar(*p).map_err(invalid),
            Self::Biolek { p } => WindowSpec::biolek(*p).map_err(invalid),
            Self::Prodromakis { p, j } => WindowSpec::prodromakis(*p, *j).map_err(invalid),
            Self::Fuzzy(doc) => {
                let system = doc.system(base_dir, defaults::current_window)?;
                WindowSpec::fuzzy(system, doc.gain.unwrap_or(1.0)).map_err(invalid)
            }
            Self::FuzzyThreshold(doc) => {
                let system = doc.system(base_dir, defaults::voltage_threshold_window)?;
                WindowSpec::fuzzy_threshold(system, doc.gain.unwrap_or(1.0)).map_err(invalid)
            }
        }
    }

    /// Parses a window given inline, e.g. on the command line.
    pub fn from_json(text: &str) -> Result<Self> {
        parse_json(text, "window")
    }
}

impl FuzzyWindowDoc {
    fn system(&self, base_dir: &Path, default: fn() -> FuzzySystem<f64>) -> Result<Arc<FuzzySystem<f64>>> {
        let doc = match (&self.system, &self.system_file) {
            (Some(_), Some(_)) => {
                return Err(CliError::Validation("give either `system` or `system_file`, not both".into()))
            }
            (None, None) => return Ok(Arc::new(default())),
            (Some(doc), None) => doc.clone(),
            (None, Some(path)) => {
                let path = base_dir.join(path);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Validation(format!("system_file {}: {e}", path.display())))?;
                parse_json::<FuzzySystemDoc<f64>>(&text, &path.display().to_string())?
            }
        };
        FuzzySystem::try_from(doc)
            .map(Arc::new)
            .map_err(|e| CliError::Validation(format!("system: {e}")))
    }
}

impl SourceDoc {
    pub fn resolve(&self) -> Result<Waveform<f64>> {
        let wave = match self {
            Self::Sine { amplitude, frequency, phase, offset } => Waveform::Sine {
                amplitude: *amplitude,
                frequency: *frequency,
                phase: *phase,
                offset: *offset,
            },
            Self::Constant { level } => Waveform::Constant { level: *level },
            Self::Piecewise { points } => Waveform::Piecewise { points: points.clone() },
        };
        wave.validated().map_err(|e| CliError::Validation(e.to_string()))
    }
}

impl DeviceDoc {
    fn overlay(&self, top: &DeviceDoc) -> DeviceDoc {
        let seeds_state = top.x_init.is_some() || top.r_init.is_some();
        DeviceDoc {
            r_on: top.r_on.or(self.r_on),
            r_off: top.r_off.or(self.r_off),
            k: top.k.or(self.k),
            x_init: if seeds_state { top.x_init } else { self.x_init },
            r_init: if seeds_state { top.r_init } else { self.r_init },
        }
    }

    pub fn resolve(&self) -> Result<DeviceParams<f64>> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| CliError::Validation(format!("circuit.device.{name}: missing")))
        };
        let (r_on, r_off, k) = (need(self.r_on, "r_on")?, need(self.r_off, "r_off")?, need(self.k, "k")?);
        let params = match (self.x_init, self.r_init) {
            (Some(x), None) => DeviceParams::new(r_on, r_off, k, x),
            (None, Some(r)) => DeviceParams::with_initial_resistance(r_on, r_off, k, r),
            (None, None) => {
                return Err(CliError::Validation("circuit.device: one of x_init or r_init is required".into()))
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Validation(
                    "circuit.device: x_init and r_init are mutually exclusive".into(),
                ))
            }
        };
        params.map_err(|e| CliError::Validation(format!("circuit.device: {e}")))
    }
}

impl CircuitDoc {
    /// Fields of `top` replace those of `self`; the device merges per field.
    pub fn overlay(&self, top: &CircuitDoc) -> CircuitDoc {
        CircuitDoc {
            source: top.source.clone().or_else(|| self.source.clone()),
            series_resistance: top.series_resistance.or(self.series_resistance),
            device: match (&self.device, &top.device) {
                (Some(base), Some(top)) => Some(base.overlay(top)),
                (base, top) => top.clone().or_else(|| base.clone()),
            },
            window: top.window.clone().or_else(|| self.window.clone()),
            dt: top.dt.or(self.dt),
            duration: top.duration.or(self.duration),
        }
    }

    pub fn resolve(&self, base_dir: &Path) -> Result<CircuitConfig<f64>> {
        fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
            v.clone()
                .ok_or_else(|| CliError::Validation(format!("circuit.{name}: missing (no scenario given)")))
        }
        let prefix = |field: &'static str| move |e: CliError| match e {
            CliError::Validation(msg) if !msg.starts_with("circuit.") => {
                CliError::Validation(format!("circuit.{field}: {msg}"))
            }
            other => other,
        };
        let cfg = CircuitConfig {
            source: need(&self.source, "source")?.resolve().map_err(prefix("source"))?,
            series_resistance: need(&self.series_resistance, "series_resistance")?,
            device: need(&self.device, "device")?.resolve()?,
            window: need(&self.window, "window")?.resolve(base_dir).map_err(prefix("window"))?,
            dt: need(&self.dt, "dt")?,
            duration: need(&self.duration, "duration")?,
        };
        cfg.validate().map_err(|e| CliError::Validation(format!("circuit: {e}")))?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn from_json(text: &str, origin: &str) -> Result<Self> {
        let cfg: RunConfig = parse_json(text, origin)?;
        if cfg.schema_version != SCHEMA_VERSION {
            return Err(CliError::Validation(format!(
                "{origin}: schema_version: unsupported version {} (expected {SCHEMA_VERSION})",
                cfg.schema_version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text, &path.display().to_string())
    }

    /// Preset circuit (if any) overlaid with the explicit fields.
    pub fn effective_circuit(&self) -> CircuitDoc {
        match self.scenario {
            Some(preset) => preset.circuit().overlay(&self.circuit),
            None => self.circuit.clone(),
        }
    }

    pub fn compare_windows(&self) -> Option<Vec<WindowDoc>> {
        self.compare
            .as_ref()
            .map(|c| c.windows.clone())
            .or_else(|| self.scenario.and_then(Preset::compare_windows))
    }
}

/// Deserializes with the failing field path and the byte offset of the
/// error in the message.
pub fn parse_json<T: DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let report = |path: String, inner: &serde_json::Error| {
        let offset = byte_offset(text, inner.line(), inner.column());
        let field = if path.is_empty() || path == "." { String::new() } else { format!("{path}: ") };
        CliError::Validation(format!("{origin}: {field}{inner} (byte offset {offset})"))
    };
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de)
        .map_err(|err| report(err.path().to_string(), err.inner()))?;
    de.end().map_err(|err| report(String::new(), &err))?;
    Ok(value)
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let line_start: usize = text.split_inclusive('\n').take(line - 1).map(str::len).sum();
    (line_start + column.saturating_sub(1)).min(text.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_json_reports_byte_offset() {
        let text = "{\n  \"schema_version\": 1,\n  \"circuit\": {\"dt\": }\n}";
        let msg = RunConfig::from_json(text, "cfg").unwrap_err().to_string();
        // offset of the stray `}`
        assert_eq!(text.as_bytes()[45], b'}');
        assert!(msg.contains("byte offset 45"), "{msg}");
        assert!(msg.contains("circuit.dt"), "{msg}");
    }

    #[test]
    fn unknown_window_field_is_named() {
        let text = r#"{"schema_version": 1, "circuit": {"window": {"kind": "joglekar", "p": "ten"}}}"#;
        let msg = RunConfig::from_json(text, "cfg").unwrap_err().to_string();
        assert!(msg.contains("circuit.window"), "{msg}");
    }

    #[test]
    fn wrong_schema_version() {
        let msg = RunConfig::from_json(r#"{"schema_version": 7}"#, "cfg").unwrap_err().to_string();
        assert!(msg.contains("schema_version"), "{msg}");
    }

    #[test]
    fn missing_fields_without_scenario() {
        let cfg = RunConfig::from_json(r#"{"schema_version": 1, "circuit": {"dt": 1e-3}}"#, "cfg").unwrap();
        let msg = cfg.effective_circuit().resolve(Path::new(".")).unwrap_err().to_string();
        assert!(msg.contains("circuit.source: missing"), "{msg}");
    }

    #[test]
    fn explicit_fields_override_preset() {
        let text = r#"{"schema_version": 1, "scenario": "fig3",
                       "circuit": {"dt": 5e-4, "device": {"x_init": 0.5}}}"#;
        let cfg = RunConfig::from_json(text, "cfg").unwrap();
        let circuit = cfg.effective_circuit().resolve(Path::new(".")).unwrap();
        assert_eq!(circuit.dt, 5e-4);
        assert_eq!(circuit.device.x_init(), 0.5);
        assert_eq!(circuit.device.r_off(), 16_000.0);
        assert_eq!(circuit.window.kind(), "fuzzy");
    }

    #[test]
    fn invalid_values_name_their_field() {
        let text = r#"{"schema_version": 1, "scenario": "fig3", "circuit": {"device": {"r_on": 20000}}}"#;
        let cfg = RunConfig::from_json(text, "cfg").unwrap();
        let msg = cfg.effective_circuit().resolve(Path::new(".")).unwrap_err().to_string();
        assert!(msg.contains("circuit.device"), "{msg}");
        let text = r#"{"schema_version": 1, "scenario": "fig3", "circuit": {"window": {"kind": "joglekar", "p": 0}}}"#;
        let cfg = RunConfig::from_json(text, "cfg").unwrap();
        let msg = cfg.effective_circuit().resolve(Path::new(".")).unwrap_err().to_string();
        assert!(msg.contains("circuit.window"), "{msg}");
    }

    #[test]
    fn inline_fuzzy_system_document() {
        let doc = serde_json::to_value(defaults::current_window::<f64>().to_doc()).unwrap();
        let text = serde_json::json!({"kind": "fuzzy", "gain": 2.0, "system": doc}).to_string();
        let window = WindowDoc::from_json(&text).unwrap().resolve(Path::new(".")).unwrap();
        assert_eq!(window.as_fuzzy().unwrap().gain(), 2.0);
    }

    #[test]
    fn window_json_shapes() {
        assert_eq!(WindowDoc::from_json(r#"{"kind": "joglekar", "p": 10}"#).unwrap(), WindowDoc::Joglekar { p: 10 });
        assert_eq!(
            WindowDoc::from_json(r#"{"kind": "fuzzy_threshold"}"#).unwrap(),
            WindowDoc::FuzzyThreshold(FuzzyWindowDoc::default())
        );
        assert!(WindowDoc::from_json(r#"{"kind": "bcm"}"#).is_err());
    }
}
