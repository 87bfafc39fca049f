//! Symmetry actions on states. Actions that are diagonal in the Hermite
//! basis are applied exactly; the others are evaluated pointwise and
//! re-projected onto a larger basis.

use num_complex::Complex;
use serde::Serialize;

use crate::error::Result;
use crate::hermite::{HermiteState, SpectralGrid};
use crate::multilinear::Slot;
use crate::propagators::{fourier_map, harmonic_flow, inverse_fourier_map};
use crate::scalar::cis;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "lambda", rename_all = "snake_case")]
pub enum Symmetry {
    Fourier,
    /// f ↦ e^{iλ} f
    Modulation(f64),
    /// f ↦ λ^{1/2} f(λx)
    Scaling(f64),
    /// f ↦ e^{iλx} f
    LinearModulation(f64),
    /// f ↦ f(· + λ)
    Translation(f64),
    /// f ↦ e^{iλx²} f
    QuadraticModulation(f64),
    /// f ↦ e^{iλΔ} f
    Schrodinger(f64),
    /// f ↦ e^{iλH} f
    HarmonicFlow(f64),
}

impl Symmetry {
    pub fn name(&self) -> &'static str {
        match self {
            Symmetry::Fourier => "fourier",
            Symmetry::Modulation(_) => "modulation",
            Symmetry::Scaling(_) => "l2_scaling",
            Symmetry::LinearModulation(_) => "linear_modulation",
            Symmetry::Translation(_) => "translation",
            Symmetry::QuadraticModulation(_) => "quadratic_modulation",
            Symmetry::Schrodinger(_) => "schrodinger_group",
            Symmetry::HarmonicFlow(_) => "harmonic_flow",
        }
    }
}

/// Unit-scale projection grid for re-analysing transformed states.
#[derive(Debug, Clone)]
pub struct Reprojector {
    grid: SpectralGrid<f64>,
}

impl Reprojector {
    /// Projects onto `n_out` modes with a `q`-node rule.
    pub fn new(n_out: usize, q: usize) -> Result<Self> {
        Ok(Self { grid: SpectralGrid::new(q.max(n_out), 1.0, n_out)? })
    }

    pub fn n_out(&self) -> usize {
        self.grid.n_table()
    }

    /// Hermite coefficients of x ↦ g(x).
    pub fn project(&self, g: impl Fn(f64) -> Complex<f64>) -> Result<HermiteState<f64>> {
        let values: Vec<Complex<f64>> = self.grid.nodes().iter().map(|&x| g(x)).collect();
        self.grid.analyze(&values)
    }

    /// Applies `sym` to `f`; the result has `n_out` modes.
    pub fn apply(&self, sym: Symmetry, f: &HermiteState<f64>) -> Result<HermiteState<f64>> {
        let n = self.n_out();
        let slot = Slot::State(f.clone());
        Ok(match sym {
            Symmetry::Fourier => fourier_map(f).padded(n),
            Symmetry::Modulation(l) => f.scale(cis(l)).padded(n),
            Symmetry::HarmonicFlow(l) => harmonic_flow(f, l).padded(n),
            Symmetry::Scaling(l) => self.project(|x| slot.eval(l * x) * l.sqrt())?,
            Symmetry::LinearModulation(l) => self.project(|x| slot.eval(x) * cis(l * x))?,
            Symmetry::Translation(l) => self.project(|x| slot.eval(x + l))?,
            Symmetry::QuadraticModulation(l) => self.project(|x| slot.eval(x) * cis(l * x * x))?,
            Symmetry::Schrodinger(l) => {
                // e^{iλΔ} = F⁻¹ e^{−iλξ²} F; the multiplier is even, so the
                // sign convention of F does not matter.
                let g = Slot::State(fourier_map(f));
                inverse_fourier_map(&self.project(|x| g.eval(x) * cis(-l * x * x))?)
            }
        })
    }
}
