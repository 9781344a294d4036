//! Run configuration: explicit flags override the TOML file, which
//! overrides built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Keys accepted in the TOML file. Every key is optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub gcm_path: Option<PathBuf>,
    pub max_length: Option<usize>,
    pub max_height: Option<i64>,
    pub max_steps: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| Failure::usage(format!("invalid config {}: {e}", path.display())))
    }
}

/// Resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub gcm_path: PathBuf,
    /// Commands pick their own default when unset.
    pub max_length: Option<usize>,
    pub max_height: Option<i64>,
    pub max_steps: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: Format,
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub gcm_path: Option<PathBuf>,
    pub max_length: Option<usize>,
    pub max_height: Option<i64>,
    pub max_steps: Option<usize>,
    pub out_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub cache_dir: Option<PathBuf>,
}

impl Config {
    pub fn resolve(flags: Overrides, file: FileConfig) -> Result<Self, Failure> {
        let gcm_path = flags.gcm_path.or(file.gcm_path).ok_or_else(|| {
            Failure::usage("no GCM file given (use --gcm or gcm_path in the config)")
        })?;
        if !gcm_path.is_file() {
            return Err(Failure::usage(format!(
                "GCM file {} does not exist",
                gcm_path.display()
            )));
        }
        let config = Config {
            gcm_path,
            max_length: flags.max_length.or(file.max_length),
            max_height: flags.max_height.or(file.max_height),
            max_steps: flags.max_steps.or(file.max_steps),
            out_path: flags.out_path.or(file.out_path),
            format: flags.format.or(file.format).unwrap_or_default(),
            workers: flags.workers.or(file.workers),
            cache_dir: flags.cache_dir.or(file.cache_dir),
        };
        if config.max_height.is_some_and(|h| h < 1) {
            return Err(Failure::usage("max_height must be at least 1"));
        }
        if config.max_length == Some(0) {
            return Err(Failure::usage("max_length must be at least 1"));
        }
        if config.max_steps == Some(0) {
            return Err(Failure::usage("max_steps must be at least 1"));
        }
        if config.workers == Some(0) {
            return Err(Failure::usage("workers must be at least 1"));
        }
        Ok(config)
    }
}
