//! Stationary-wave frequency tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multilinear::resonant::{OperatorRoute, ResonantConfig, ResonantOperator};
use crate::multilinear::stationary::{wave_with, StationaryWave, STATIONARY_MARGIN};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StationaryTable {
    pub config: ResonantConfig,
    pub rows: Vec<StationaryWave>,
}

/// ω_n and residuals for n = 0..=n_max. The truncation is raised to
/// n_max + margin + 1 modes if the configured one is smaller.
pub fn run_stationary_table(config: &ResonantConfig, n_max: usize) -> Result<StationaryTable> {
    let need = n_max + STATIONARY_MARGIN + 1;
    let mut cfg = *config;
    if cfg.n_modes < need {
        cfg.n_modes = need;
        cfg.m_times = cfg.m_times.max(ResonantConfig::min_m_times(cfg.k, need));
    }
    cfg.validate().map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let op = ResonantOperator::new(cfg)?;
    let rows = (0..=n_max).map(|n| wave_with(&op, n, OperatorRoute::TimeAverage)).collect::<Result<_>>()?;
    Ok(StationaryTable { config: cfg, rows })
}
