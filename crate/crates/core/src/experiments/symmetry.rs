//! Invariance of E₆/E₄ under the symmetry actions of the two Hamiltonians.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiments::random::StateSampler;
use crate::experiments::transforms::{Reprojector, Symmetry};
use crate::hermite::HermiteState;
use crate::multilinear::{FunctionalRoute, ResonantConfig, ResonantOperator, Normalization, OperatorRoute};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryOptions {
    /// Modes of the random base states.
    pub base_modes: usize,
    /// Modes the transformed states are re-projected onto.
    pub big_modes: usize,
    /// Node count of the re-projection rule.
    pub projection_nodes: usize,
    pub draws: usize,
    pub tolerance: f64,
}

impl Default for SymmetryOptions {
    fn default() -> Self {
        Self { base_modes: 6, big_modes: 48, projection_nodes: 200, draws: 50, tolerance: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryResult {
    pub name: String,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetryReport {
    pub k: usize,
    pub seed: u64,
    pub options: SymmetryOptions,
    pub results: Vec<SymmetryResult>,
    pub passed: bool,
}

/// Symmetries tested for arity k, with the parameter drawn from `rng`.
fn draw_actions(k: usize, rng: &mut StateSampler) -> Vec<Symmetry> {
    let mut v = vec![
        Symmetry::Fourier,
        Symmetry::Modulation(rng.uniform(-3.0, 3.0)),
    ];
    if k == 2 {
        v.push(Symmetry::Scaling(rng.uniform(0.8, 1.25)));
    }
    v.push(Symmetry::LinearModulation(rng.uniform(-0.5, 0.5)));
    v.push(Symmetry::Translation(rng.uniform(-0.5, 0.5)));
    if k == 2 {
        v.push(Symmetry::QuadraticModulation(rng.uniform(-0.2, 0.2)));
        v.push(Symmetry::Schrodinger(rng.uniform(-0.2, 0.2)));
    }
    v.push(Symmetry::HarmonicFlow(rng.uniform(-3.0, 3.0)));
    v
}

/// E(f₁, …, f_{2k+2}) by the time-average route at a fixed truncation.
struct Functional {
    op: ResonantOperator<f64>,
}

impl Functional {
    fn new(k: usize, n: usize) -> Result<Self> {
        let cfg = ResonantConfig::new(k, n)?.with_normalization(Normalization::TimeAverage);
        Ok(Self { op: ResonantOperator::new(cfg)? })
    }

    fn eval(&self, f: &[HermiteState<f64>]) -> Result<Complex<f64>> {
        let a = self.op.config().arity();
        let refs: Vec<&HermiteState<f64>> = f[..a].iter().collect();
        Ok(self.op.apply(&refs, OperatorRoute::TimeAverage)?.inner(&f[a]))
    }
}

/// Runs the suite: 8 actions for k = 2, 5 for k = 1.
pub fn run_symmetry_suite(k: usize, seed: u64, opts: &SymmetryOptions) -> Result<SymmetryReport> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 1 or 2, got {k}")));
    }
    let n_slots = 2 * k + 2;
    let proj = Reprojector::new(opts.big_modes, opts.projection_nodes)?;
    let func = Functional::new(k, opts.big_modes)?;
    let mut rng = StateSampler::new(seed);
    let mut names: Vec<&'static str> = Vec::new();
    let mut worst: Vec<f64> = Vec::new();
    for _ in 0..opts.draws {
        let base: Vec<HermiteState<f64>> =
            (0..n_slots).map(|_| rng.state(opts.base_modes).padded(opts.big_modes)).collect();
        let e0 = func.eval(&base)?;
        let actions = draw_actions(k, &mut rng);
        if names.is_empty() {
            names = actions.iter().map(|a| a.name()).collect();
            worst = vec![0.0; actions.len()];
        }
        for (i, act) in actions.iter().enumerate() {
            let moved = base.iter().map(|f| proj.apply(*act, f)).collect::<Result<Vec<_>>>()?;
            let e1 = func.eval(&moved)?;
            worst[i] = worst[i].max((e1 - e0).norm());
        }
    }
    let results: Vec<SymmetryResult> = names
        .iter()
        .zip(&worst)
        .map(|(n, &d)| SymmetryResult { name: n.to_string(), max_deviation: d, passed: d < opts.tolerance })
        .collect();
    let passed = results.iter().all(|r| r.passed);
    Ok(SymmetryReport { k, seed, options: opts.clone(), results, passed })
}

/// Route used for the invariance checks (recorded in reports).
pub const SYMMETRY_ROUTE: FunctionalRoute = FunctionalRoute::TimeAverage;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_and_is_reproducible() {
        let opts = SymmetryOptions { draws: 2, big_modes: 40, projection_nodes: 160, ..Default::default() };
        for k in [1, 2] {
            let a = run_symmetry_suite(k, 5, &opts).unwrap();
            assert_eq!(a.results.len(), if k == 2 { 8 } else { 5 });
            assert!(a.passed, "{:?}", a.results);
            assert_eq!(a, run_symmetry_suite(k, 5, &opts).unwrap());
        }
    }
}
