//! Random-draw check of the operator L² bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::random::StateSampler;
use crate::hermite::HermiteState;
use crate::multilinear::{OperatorRoute, ResonantConfig, ResonantOperator};

/// ‖T‖ ≤ C ∏‖f_k‖ with C = 2√3/π (quintic) or √(8/π) (cubic), Hamiltonian normalisation.
pub fn operator_bound(k: usize) -> f64 {
    if k == 2 {
        2.0 * 3f64.sqrt() / std::f64::consts::PI
    } else {
        (8.0 / std::f64::consts::PI).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub seed: u64,
    pub trials: usize,
    pub n_modes: usize,
    pub bound: f64,
    /// Largest ‖T(f…)‖/∏‖f‖ seen.
    pub max_ratio: f64,
    pub violations: usize,
    pub slack: f64,
}

/// Draws `trials` tuples of unit states on `n_modes` modes and measures the
/// full output norm (inputs padded so nothing is truncated).
pub fn run_bounds_check(k: usize, trials: usize, seed: u64, n_modes: usize) -> Result<BoundsReport> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 1 or 2, got {k}")));
    }
    let n_big = (2 * k + 1) * (n_modes.max(1) - 1) + 1;
    let op = ResonantOperator::<f64>::new(ResonantConfig::new(k, n_big)?)?;
    let bound = operator_bound(k);
    let slack = 1e-9;
    let mut rng = StateSampler::new(seed);
    let (mut max_ratio, mut violations) = (0.0f64, 0usize);
    for _ in 0..trials {
        let f: Vec<HermiteState<f64>> = (0..2 * k + 1).map(|_| rng.state(n_modes).padded(n_big)).collect();
        let refs: Vec<&HermiteState<f64>> = f.iter().collect();
        let t = op.apply(&refs, OperatorRoute::TimeAverage)?;
        let prod: f64 = f.iter().map(|s| s.l2_norm()).product();
        let r = t.l2_norm() / prod;
        max_ratio = max_ratio.max(r);
        if t.l2_norm() > bound * prod + slack {
            violations += 1;
        }
    }
    Ok(BoundsReport { k, seed, trials, n_modes, bound, max_ratio, violations, slack })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn few_trials_within_bound() {
        for k in [1, 2] {
            let r = run_bounds_check(k, 5, 3, 4).unwrap();
            assert_eq!(r.violations, 0);
            assert!(r.max_ratio > 0.0 && r.max_ratio <= r.bound);
        }
    }
}
