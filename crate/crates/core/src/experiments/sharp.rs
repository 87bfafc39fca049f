//! Sharp-constant check: Gaussians maximise H/‖f‖^{2k+2}.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite::HermiteState;
use crate::multilinear::hamiltonian;

/// max H₆(f)/‖f‖⁶ = 1/(π√3).
pub fn quintic_constant() -> f64 {
    1.0 / (std::f64::consts::PI * 3f64.sqrt())
}

/// max H₄(f)/‖f‖⁴ = 1/√(2π).
pub fn cubic_constant() -> f64 {
    1.0 / (2.0 * std::f64::consts::PI).sqrt()
}

pub fn sharp_constant(k: usize) -> f64 {
    if k == 2 {
        quintic_constant()
    } else {
        cubic_constant()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Perturbation {
    pub delta: f64,
    pub ratio: f64,
    /// constant − ratio.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpReport {
    pub k: usize,
    pub constant: f64,
    /// H(φ₀)/‖φ₀‖^{2k+2}.
    pub ground_ratio: f64,
    pub perturbations: Vec<Perturbation>,
}

/// Evaluates H at φ₀ and at normalised φ₀ + δφ₂ for δ = s/4, s/2, s
/// (s = perturbation_scale; the default 0.2 gives δ ∈ {0.05, 0.1, 0.2}).
pub fn run_sharp_constant_check(k: usize, perturbation_scale: f64) -> Result<SharpReport> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 1 or 2, got {k}")));
    }
    let ratio = |f: &HermiteState<f64>| -> Result<f64> {
        Ok(hamiltonian(k, f)? / f.mass().powi(k as i32 + 1))
    };
    let g = HermiteState::basis(0, 3);
    let constant = sharp_constant(k);
    let ground_ratio = ratio(&g)?;
    let mut perturbations = Vec::new();
    for delta in [perturbation_scale / 4.0, perturbation_scale / 2.0, perturbation_scale] {
        let f = g.axpy(Complex::new(delta, 0.0), &HermiteState::basis(2, 3)).normalized();
        let r = ratio(&f)?;
        perturbations.push(Perturbation { delta, ratio: r, gap: constant - r });
    }
    Ok(SharpReport { k, constant, ground_ratio, perturbations })
}
