//! Global options: JSON config file merged with command-line flags.

use std::path::Path;

use clap::ValueEnum;
use resonant::multilinear::{Normalization, ResonantConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormArg {
    Hamiltonian,
    TimeAverage,
}

impl From<NormArg> for Normalization {
    fn from(n: NormArg) -> Self {
        match n {
            NormArg::Hamiltonian => Normalization::Hamiltonian,
            NormArg::TimeAverage => Normalization::TimeAverage,
        }
    }
}

/// Keys accepted in `--config` files (snake_case or kebab-case).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(alias = "n-modes")]
    pub n_modes: Option<usize>,
    #[serde(alias = "m-times")]
    pub m_times: Option<usize>,
    #[serde(alias = "m-theta")]
    pub m_theta: Option<usize>,
    pub normalization: Option<NormArg>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("malformed config {}: {e}", path.display())))
    }

    /// Flag values win over file values.
    pub fn overridden_by(self, flags: &FileConfig) -> FileConfig {
        FileConfig {
            n_modes: flags.n_modes.or(self.n_modes),
            m_times: flags.m_times.or(self.m_times),
            m_theta: flags.m_theta.or(self.m_theta),
            normalization: flags.normalization.or(self.normalization),
            threads: flags.threads.or(self.threads),
        }
    }

    /// Resonant config for arity k, with `default_modes` if none was given.
    pub fn resonant(&self, k: usize, default_modes: usize) -> Result<ResonantConfig, CliError> {
        let n = self.n_modes.unwrap_or(default_modes);
        let mut cfg = ResonantConfig::new(k, n).map_err(CliError::from)?;
        if let Some(m) = self.m_times {
            cfg = cfg.with_m_times(m).map_err(CliError::from)?;
        }
        if let Some(m) = self.m_theta {
            cfg = cfg.with_m_theta(m).map_err(CliError::from)?;
        }
        if let Some(n) = self.normalization {
            cfg = cfg.with_normalization(n.into());
        }
        Ok(cfg)
    }
}
