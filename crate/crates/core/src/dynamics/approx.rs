//! Comparison of the full profile flow with the resonant flow for small data.

use num_complex::Complex;
use serde::Serialize;

use crate::dynamics::integrate::{rk4_step, step_plan};
use crate::dynamics::rhs::{ProfileRhs, ResonantRhs};
use crate::error::{Error, Result};
use crate::hermite::HermiteState;
use crate::multilinear::{Normalization, ResonantConfig};

/// Numerical parameters of [`approximation_experiment`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxOptions {
    pub n_modes: usize,
    pub dt: f64,
    /// Error is recorded every this many steps (and at the final time).
    pub sample_every: usize,
    /// Unit profile scaled by ε to form the initial datum.
    pub profile: Vec<Complex<f64>>,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { n_modes: 12, dt: 0.01, sample_every: 10, profile: vec![Complex::new(h, 0.0), Complex::new(h, 0.0)] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxCurve {
    pub epsilon: f64,
    pub k: usize,
    pub s: f64,
    pub horizon: f64,
    pub times: Vec<f64>,
    /// ‖v(t) − w(t)‖_{H^s}.
    pub errors: Vec<f64>,
    pub sup_error: f64,
    /// sup_error / ε^{2k+1}.
    pub fitted_constant: f64,
}

/// Integrates iv_t = N_t(v) and iw_t = T(w) (time-average normalisation)
/// from the same datum ε·profile over [0, horizon_factor·ε^{−2k}] and
/// records the H^s distance of the two profiles.
pub fn approximation_experiment(
    epsilon: f64,
    k: usize,
    s: f64,
    horizon_factor: f64,
    opts: &ApproxOptions,
) -> Result<ApproxCurve> {
    if !(0.0..=0.2).contains(&epsilon) {
        return Err(Error::InvalidArgument(format!("epsilon must lie in [0, 0.2], got {epsilon}")));
    }
    if !(s > 0.5) {
        return Err(Error::InvalidArgument(format!("s must exceed 1/2, got {s}")));
    }
    if !(horizon_factor > 0.0) {
        return Err(Error::InvalidArgument("horizon_factor must be positive".into()));
    }
    if opts.sample_every == 0 {
        return Err(Error::InvalidArgument("sample_every must be at least 1".into()));
    }
    if opts.profile.len() > opts.n_modes {
        return Err(Error::DimensionMismatch("profile has more modes than the truncation".into()));
    }
    let cfg = ResonantConfig::new(k, opts.n_modes)?.with_normalization(Normalization::TimeAverage);
    let full = ProfileRhs::<f64>::new(cfg)?;
    let res = ResonantRhs::<f64>::new(cfg)?;
    let horizon = if epsilon == 0.0 { 0.0 } else { horizon_factor * epsilon.powi(-2 * k as i32) };
    let (steps, h) = step_plan(horizon, opts.dt)?;

    let u0 = HermiteState::new(opts.profile.clone()).padded(opts.n_modes).scale_real(epsilon);
    let (mut v, mut w) = (u0.clone(), u0);
    let mut times = vec![0.0];
    let mut errors = vec![0.0];
    for step in 0..steps {
        let t = step as f64 * h;
        let v1 = rk4_step(&full, t, &v, h)?;
        let w1 = rk4_step(&res, t, &w, h)?;
        if !v1.is_finite() || !w1.is_finite() {
            return Err(Error::Divergence { last_good_time: t });
        }
        v = v1;
        w = w1;
        if (step + 1) % opts.sample_every == 0 || step + 1 == steps {
            times.push((step + 1) as f64 * h);
            errors.push((&v - &w).hs_norm(s));
        }
    }
    let sup_error = errors.iter().copied().fold(0.0, f64::max);
    let fitted_constant = if epsilon == 0.0 { 0.0 } else { sup_error / epsilon.powi(2 * k as i32 + 1) };
    Ok(ApproxCurve { epsilon, k, s, horizon, times, errors, sup_error, fitted_constant })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_amplitude_gives_zero_error() {
        let c = approximation_experiment(0.0, 1, 1.0, 1.0, &ApproxOptions::default()).unwrap();
        assert!(c.errors.iter().all(|&e| e == 0.0));
    }

    #[test]
    fn error_starts_at_zero_and_stays_small() {
        let opts = ApproxOptions { n_modes: 8, dt: 0.02, sample_every: 5, ..Default::default() };
        let c = approximation_experiment(0.2, 1, 1.0, 0.2, &opts).unwrap();
        assert_eq!(c.errors[0], 0.0);
        assert!(c.sup_error > 0.0 && c.sup_error < 0.2f64.powi(2));
    }

    #[test]
    fn argument_checks() {
        let o = ApproxOptions::default();
        assert!(approximation_experiment(0.3, 1, 1.0, 1.0, &o).is_err());
        assert!(approximation_experiment(0.1, 1, 0.5, 1.0, &o).is_err());
        assert!(approximation_experiment(0.1, 1, 1.0, 0.0, &o).is_err());
    }
}
