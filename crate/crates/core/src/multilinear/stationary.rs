//! Hermite functions as stationary waves of the resonant flows.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite::HermiteState;
use crate::multilinear::resonant::{OperatorRoute, ResonantConfig, ResonantOperator};

/// Modes kept above n so that truncation cannot clip T(φ_n, …).
pub const STATIONARY_MARGIN: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryWave {
    pub n: usize,
    /// ⟨T(φ_n, …), φ_n⟩ (real part).
    pub omega: f64,
    /// Imaginary part of the same inner product.
    pub omega_imag: f64,
    /// ‖T(φ_n, …) − ω φ_n‖_{L²}.
    pub residual: f64,
}

/// Frequency and residual of φ_n under T in the configured normalisation.
pub fn stationary_eigenvalue(n: usize, config: &ResonantConfig) -> Result<StationaryWave> {
    if n + STATIONARY_MARGIN >= config.n_modes {
        return Err(Error::Margin(format!(
            "mode {n} needs n_modes > {} (got {})",
            n + STATIONARY_MARGIN,
            config.n_modes
        )));
    }
    let op = ResonantOperator::<f64>::new(*config)?;
    wave_with(&op, n, OperatorRoute::TimeAverage)
}

pub(crate) fn wave_with(op: &ResonantOperator<f64>, n: usize, route: OperatorRoute) -> Result<StationaryWave> {
    let phi = HermiteState::basis(n, op.config().n_modes);
    let inputs = vec![&phi; op.config().arity()];
    let t = op.apply(&inputs, route)?;
    let omega = t.inner(&phi);
    let residual = (&t - &phi.scale_real(omega.re)).l2_norm();
    Ok(StationaryWave { n, omega: omega.re, omega_imag: omega.im, residual })
}
