//! Configuration loading shared by all commands.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use stripgibbs_core::{ModelKind, ModelParams};

use crate::error::{CliError, Result};

/// Settings common to every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSettings {
    /// Master seed; every random stream of the run derives from it.
    pub seed: u64,
    /// Worker threads; `None` uses every logical core.
    pub threads: Option<usize>,
}

impl Default for RunSettings {
    fn default() -> Self {
        Self {
            seed: 2024,
            threads: None,
        }
    }
}

/// Model parameters as written in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    /// `geometric-lpp` or `log-gamma`.
    pub model: ModelKind,
    /// Bulk parameters, one per column.
    pub bulk: Vec<f64>,
    /// Left boundary parameter (`c1` or `u`).
    pub left: f64,
    /// Right boundary parameter (`c2` or `v`).
    pub right: f64,
}

impl ParamsSpec {
    /// Homogeneous parameters of width `n`.
    pub fn homogeneous(model: ModelKind, n: usize, bulk: f64, left: f64, right: f64) -> Self {
        Self {
            model,
            bulk: vec![bulk; n],
            left,
            right,
        }
    }

    /// Validated model parameters.
    pub fn to_params(&self) -> Result<ModelParams> {
        ModelParams::new(self.model, self.bulk.clone(), self.left, self.right)
            .map_err(CliError::Params)
    }
}

/// Reads a JSON config, or returns the defaults when `path` is `None`.
pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::ReadConfig {
                path: p.to_path_buf(),
                source,
            })?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

/// Fails with a config error unless `ok`.
pub fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Config(msg()))
    }
}
