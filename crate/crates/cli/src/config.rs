//! Run configuration: defaults, config file, environment and flags.
//!
//! Precedence, lowest to highest: built-in defaults (the reproduction
//! preset), the JSON config file, the `ORBITCERT_OUT` environment
//! variable (output directory only), explicit command-line flags.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use orbitcert::{DecimalValue, Error, EvaluationForm, MapParameters, MIN_REFERENCE_DIGITS};

/// Name of the environment variable supplying the default output
/// directory.
pub const OUT_DIR_ENV: &str = "ORBITCERT_OUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    fn parse(text: &str) -> Result<Self, String> {
        match text.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown output format `{other}` (expected csv, json or svg)")),
        }
    }
}

/// Effective configuration of one run. Serializing and re-reading this
/// yields an identical run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub r: String,
    pub x0: String,
    pub iterates: usize,
    pub digits: u32,
    pub threshold: String,
    pub forms: Vec<String>,
    pub out: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            r: orbitcert::report::PRESET_R.to_string(),
            x0: orbitcert::report::PRESET_X0.to_string(),
            iterates: orbitcert::report::PRESET_ITERATES,
            digits: orbitcert::DEFAULT_REFERENCE_DIGITS,
            threshold: orbitcert::report::PRESET_THRESHOLD.to_string(),
            forms: vec!["G".to_string(), "H".to_string()],
            out: PathBuf::from("."),
            formats: vec![OutputFormat::Csv, OutputFormat::Json],
        }
    }
}

/// Config-file payload; every field optional so files may pin only what
/// they care about.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    r: Option<String>,
    x0: Option<String>,
    iterates: Option<usize>,
    digits: Option<u32>,
    threshold: Option<String>,
    forms: Option<Vec<String>>,
    out: Option<PathBuf>,
    formats: Option<Vec<String>>,
}

/// Raw command-line values; `None` means "not given on the command line".
#[derive(Debug, Default)]
pub struct Overrides {
    pub r: Option<String>,
    pub x0: Option<String>,
    pub iterates: Option<usize>,
    pub digits: Option<u32>,
    pub threshold: Option<String>,
    pub forms: Option<String>,
    pub out: Option<PathBuf>,
    pub formats: Option<String>,
    pub config: Option<PathBuf>,
}

impl RunConfig {
    /// Builds the effective configuration from defaults, optional config
    /// file, environment and flags, then validates it.
    pub fn resolve(overrides: &Overrides) -> Result<Self, String> {
        let mut config = RunConfig::default();
        let mut out_from_config = false;

        if let Some(path) = &overrides.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
            let partial: PartialConfig = serde_json::from_str(&text)
                .map_err(|e| format!("config file {}: {e}", path.display()))?;
            if let Some(v) = partial.r {
                config.r = v;
            }
            if let Some(v) = partial.x0 {
                config.x0 = v;
            }
            if let Some(v) = partial.iterates {
                config.iterates = v;
            }
            if let Some(v) = partial.digits {
                config.digits = v;
            }
            if let Some(v) = partial.threshold {
                config.threshold = v;
            }
            if let Some(v) = partial.forms {
                config.forms = v;
            }
            if let Some(v) = partial.out {
                config.out = v;
                out_from_config = true;
            }
            if let Some(v) = partial.formats {
                config.formats = v
                    .iter()
                    .map(|f| OutputFormat::parse(f))
                    .collect::<Result<_, _>>()?;
            }
        }

        // The environment only supplies a default output directory; any
        // explicit source wins.
        if !out_from_config && overrides.out.is_none() {
            if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
                if !dir.is_empty() {
                    config.out = PathBuf::from(dir);
                }
            }
        }

        if let Some(v) = &overrides.r {
            config.r = v.clone();
        }
        if let Some(v) = &overrides.x0 {
            config.x0 = v.clone();
        }
        if let Some(v) = overrides.iterates {
            config.iterates = v;
        }
        if let Some(v) = overrides.digits {
            config.digits = v;
        }
        if let Some(v) = &overrides.threshold {
            config.threshold = v.clone();
        }
        if let Some(v) = &overrides.forms {
            config.forms = v.split(',').map(|s| s.trim().to_string()).collect();
        }
        if let Some(v) = &overrides.out {
            config.out = v.clone();
        }
        if let Some(v) = &overrides.formats {
            config.formats = v
                .split(',')
                .map(OutputFormat::parse)
                .collect::<Result<_, _>>()?;
        }

        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), String> {
        self.map_parameters().map_err(|e| e.to_string())?;
        if self.digits < MIN_REFERENCE_DIGITS {
            return Err(Error::PrecisionTooLow {
                digits: self.digits,
                minimum: MIN_REFERENCE_DIGITS,
            }
            .to_string());
        }
        let threshold = DecimalValue::parse(&self.threshold).map_err(|e| e.to_string())?;
        if threshold.to_f64_nearest() <= 0.0 {
            return Err(format!("threshold must be positive, got {}", self.threshold));
        }
        if self.forms.is_empty() {
            return Err("at least one evaluation form is required".to_string());
        }
        for form in &self.forms {
            EvaluationForm::parse(form).map_err(|e| e.to_string())?;
        }
        if self.formats.is_empty() {
            return Err("at least one output format is required".to_string());
        }
        Ok(())
    }

    pub fn map_parameters(&self) -> Result<MapParameters, Error> {
        MapParameters::new(&self.r, &self.x0, self.iterates)
    }

    pub fn parsed_forms(&self) -> Vec<EvaluationForm> {
        let mut forms: Vec<EvaluationForm> = self
            .forms
            .iter()
            .map(|f| EvaluationForm::parse(f).expect("validated"))
            .collect();
        forms.dedup();
        forms
    }

    pub fn wants(&self, format: OutputFormat) -> bool {
        self.formats.contains(&format)
    }
}
