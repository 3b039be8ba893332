use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::Bounds;
use crate::verifier::{ClassifyOptions, SampleSpec};

/// Environment variable naming a TOML file with [`RunConfig`] defaults.
pub const CONFIG_ENV: &str = "AMPLAB_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub enumeration_bound: usize,
    pub exhaustive_group_bound: u32,
    pub symmetry_reduction: bool,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub seed: u64,
    pub samples: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        let b = Bounds::default();
        let s = SampleSpec::default();
        RunConfig {
            enumeration_bound: b.enumeration,
            exhaustive_group_bound: b.exhaustive_group,
            symmetry_reduction: true,
            output_format: OutputFormat::Text,
            output_path: None,
            seed: s.seed,
            samples: s.samples,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let cfg: RunConfig = toml::from_str(&text).map_err(|e| Error::Config {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        cfg.validate().map_err(|message| Error::Config {
            path: path.to_path_buf(),
            message,
        })?;
        Ok(cfg)
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        if self.enumeration_bound == 0 {
            return Err("enumeration_bound must be positive".into());
        }
        if self.exhaustive_group_bound == 0 {
            return Err("exhaustive_group_bound must be positive".into());
        }
        Ok(())
    }

    pub fn bounds(&self) -> Bounds {
        Bounds {
            enumeration: self.enumeration_bound,
            exhaustive_group: self.exhaustive_group_bound,
        }
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            bounds: self.bounds(),
            symmetry: self.symmetry_reduction,
            sampling: SampleSpec {
                seed: self.seed,
                samples: self.samples,
                ..SampleSpec::default()
            },
        }
    }
}
