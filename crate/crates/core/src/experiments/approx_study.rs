//! Scaling study of the resonant approximation error in ε.

use serde::Serialize;

use crate::dynamics::approx::{approximation_experiment, ApproxCurve, ApproxOptions};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxStudy {
    pub k: usize,
    pub s: f64,
    pub options: ApproxOptions,
    pub curves: Vec<ApproxCurve>,
    /// Least-squares slope of log(sup error) against log ε; None for a single ε.
    pub fitted_exponent: Option<f64>,
}

/// Least-squares slope of y against x.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn run_approx_study(k: usize, epsilons: &[f64], s: f64, opts: &ApproxOptions) -> Result<ApproxStudy> {
    if epsilons.is_empty() {
        return Err(Error::InvalidArgument("at least one epsilon is required".into()));
    }
    if let Some(e) = epsilons.iter().find(|e| !(**e > 0.0 && **e <= 0.2)) {
        return Err(Error::InvalidArgument(format!("epsilon values must lie in (0, 0.2], got {e}")));
    }
    let curves = epsilons
        .iter()
        .map(|&e| approximation_experiment(e, k, s, 1.0, opts))
        .collect::<Result<Vec<_>>>()?;
    let fitted_exponent = if curves.len() >= 2 {
        let lx: Vec<f64> = curves.iter().map(|c| c.epsilon.ln()).collect();
        let ly: Vec<f64> = curves.iter().map(|c| c.sup_error.ln()).collect();
        Some(fit_slope(&lx, &ly))
    } else {
        None
    };
    Ok(ApproxStudy { k, s, options: opts.clone(), curves, fitted_exponent })
}
