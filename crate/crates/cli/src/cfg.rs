//! Optional flat key=value configuration file.
//!
//! Keys mirror the long flag names (without the leading dashes), e.g.
//! `ell=2` or `tau-num=1`. Lines that are empty or start with `#` are
//! skipped. Values given on the command line always win; keys that a
//! subcommand does not use are ignored, so one file can drive a whole
//! matrix of runs.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

pub struct FileConfig(BTreeMap<String, String>);

impl FileConfig {
    pub fn empty() -> Self {
        FileConfig(BTreeMap::new())
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        let mut map = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Validation(format!(
                    "config line {}: expected key=value, got {line:?}",
                    idx + 1
                )));
            };
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(FileConfig(map))
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(|s| s.as_str())
    }
}

/// The command-line value when given, else the config value, else None.
pub fn opt<T>(cli: Option<T>, cfg: &FileConfig, key: &str) -> Result<Option<T>, CliError>
where
    T: FromStr,
    T::Err: Display,
{
    if cli.is_some() {
        return Ok(cli);
    }
    match cfg.raw(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<T>()
            .map(Some)
            .map_err(|e| CliError::Validation(format!("config key {key}: {e}"))),
    }
}

/// Like [`opt`], but the parameter must be present in one of the two
/// sources.
pub fn need<T>(cli: Option<T>, cfg: &FileConfig, key: &str) -> Result<T, CliError>
where
    T: FromStr,
    T::Err: Display,
{
    opt(cli, cfg, key)?
        .ok_or_else(|| CliError::Validation(format!("missing required parameter --{key}")))
}
