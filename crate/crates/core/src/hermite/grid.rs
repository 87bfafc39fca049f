//! Scaled Gauss–Hermite grids with tabulated basis values.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hermite::basis::hermite_all;
use crate::hermite::quadrature::GaussHermite;
use crate::hermite::state::HermiteState;
use crate::scalar::Real;

/// Nodes x_q = y_q/α with weights W_q = w_q e^{y_q²}/α, so that
/// ∫F dx = Σ W_q F(x_q) exactly for F = polynomial·e^{-α²x²} of degree < 2Q.
#[derive(Debug, Clone)]
pub struct SpectralGrid<T> {
    scale: T,
    nodes: Vec<T>,
    comp_weights: Vec<T>,
    n_table: usize,
    // Row n holds φ_n(x_q); `weighted` holds W_q φ_n(x_q).
    basis: Vec<T>,
    weighted: Vec<T>,
}

impl<T: Real> SpectralGrid<T> {
    /// Grid with `q` nodes, scale `alpha`, tabulating modes 0..n_table.
    pub fn new(q: usize, alpha: T, n_table: usize) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::InvalidArgument(format!("grid scale must be positive, got {alpha}")));
        }
        let rule = GaussHermite::<T>::new(q)?;
        let nodes: Vec<T> = rule.nodes.iter().map(|&y| y / alpha).collect();
        let comp_weights: Vec<T> = rule.comp_weights.iter().map(|&w| w / alpha).collect();
        let mut basis = vec![T::zero(); n_table * q];
        let mut weighted = vec![T::zero(); n_table * q];
        if n_table > 0 {
            for (j, (&x, &w)) in nodes.iter().zip(&comp_weights).enumerate() {
                for (n, v) in hermite_all(n_table - 1, x).into_iter().enumerate() {
                    basis[n * q + j] = v;
                    weighted[n * q + j] = w * v;
                }
            }
        }
        Ok(Self { scale: alpha, nodes, comp_weights, n_table, basis, weighted })
    }

    /// Grid exact for every projection integral of the (2k+2)-fold product of
    /// modes below `n_modes`: scale √(k+1), Q = (k+1)(N−1)+1.
    pub fn for_resonant(n_modes: usize, k: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::InvalidArgument("n_modes must be positive".into()));
        }
        if !(1..=2).contains(&k) {
            return Err(Error::InvalidArgument(format!("arity k must be 1 or 2, got {k}")));
        }
        Self::new((k + 1) * (n_modes - 1) + 1, T::idx(k + 1).sqrt(), n_modes)
    }

    /// Unit-scale grid with Q = N nodes: the smallest grid on which
    /// analyze∘synthesize is the identity for `n_modes`-mode states.
    pub fn for_states(n_modes: usize) -> Result<Self> {
        Self::new(n_modes.max(1), T::one(), n_modes.max(1))
    }

    /// Unit-scale grid exact for the quadratic observables of states with
    /// `n_modes` modes (degree 2N integrands, derivative needs mode N).
    pub fn for_observables(n_modes: usize) -> Result<Self> {
        Self::new(n_modes.max(1) + 2, T::one(), n_modes.max(1) + 1)
    }

    pub fn q_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn comp_weights(&self) -> &[T] {
        &self.comp_weights
    }

    /// Number of tabulated modes.
    pub fn n_table(&self) -> usize {
        self.n_table
    }

    /// φ_n at every node.
    pub fn basis_row(&self, n: usize) -> &[T] {
        let q = self.q_nodes();
        &self.basis[n * q..(n + 1) * q]
    }

    /// W_q φ_n(x_q) at every node.
    pub fn weighted_row(&self, n: usize) -> &[T] {
        let q = self.q_nodes();
        &self.weighted[n * q..(n + 1) * q]
    }

    /// Σ_q W_q F(x_q).
    pub fn integrate(&self, values: &[Complex<T>]) -> Complex<T> {
        values.iter().zip(&self.comp_weights).map(|(v, &w)| v * w).sum()
    }

    /// f(x_q) = Σ c_n φ_n(x_q).
    pub fn synthesize(&self, state: &HermiteState<T>) -> Result<Vec<Complex<T>>> {
        if state.n_modes() > self.n_table {
            return Err(Error::DimensionMismatch(format!(
                "state has {} modes but grid tabulates {}",
                state.n_modes(),
                self.n_table
            )));
        }
        let mut out = vec![Complex::zero(); self.q_nodes()];
        for (n, c) in state.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis_row(n)) {
                *o += c * b;
            }
        }
        Ok(out)
    }

    /// c_n = Σ_q W_q F(x_q) φ_n(x_q) for n < n_modes.
    pub fn analyze_modes(&self, values: &[Complex<T>], n_modes: usize) -> Result<HermiteState<T>> {
        if values.len() != self.q_nodes() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {}-node grid",
                values.len(),
                self.q_nodes()
            )));
        }
        if n_modes > self.n_table {
            return Err(Error::DimensionMismatch(format!(
                "requested {n_modes} modes but grid tabulates {}",
                self.n_table
            )));
        }
        let coeffs = (0..n_modes)
            .map(|n| values.iter().zip(self.weighted_row(n)).map(|(v, &w)| v * w).sum())
            .collect();
        Ok(HermiteState::new(coeffs))
    }

    /// Projection onto every tabulated mode.
    pub fn analyze(&self, values: &[Complex<T>]) -> Result<HermiteState<T>> {
        self.analyze_modes(values, self.n_table)
    }
}

/// Grid for the (2k+2)-fold products of `n_modes`-mode states.
pub fn build_grid<T: Real>(n_modes: usize, k: usize) -> Result<SpectralGrid<T>> {
    SpectralGrid::for_resonant(n_modes, k)
}

pub fn synthesize<T: Real>(state: &HermiteState<T>, grid: &SpectralGrid<T>) -> Result<Vec<Complex<T>>> {
    grid.synthesize(state)
}

pub fn analyze<T: Real>(values: &[Complex<T>], grid: &SpectralGrid<T>) -> Result<HermiteState<T>> {
    grid.analyze(values)
}
