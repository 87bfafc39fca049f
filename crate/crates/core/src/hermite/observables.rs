//! Quadratic observables of a state.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermite::grid::SpectralGrid;
use crate::hermite::state::HermiteState;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables<T> {
    /// ∫|f|²
    pub mass: T,
    /// ∫x|f|²
    pub x_mean: T,
    /// Re∫ i f'·conj(f)
    pub momentum: T,
    /// ∫|xf|²
    pub quad_moment: T,
    /// ∫|f'|²
    pub kinetic: T,
    /// ∫|xf|² + |f'|²
    pub energy: T,
}

/// Coefficients of f' (one more mode than the input).
pub fn derivative<T: Real>(state: &HermiteState<T>) -> HermiteState<T> {
    let n = state.n_modes();
    let half = T::of(0.5);
    HermiteState::new(
        (0..=n)
            .map(|m| {
                let up = state.get(m + 1) * (T::idx(m + 1) * half).sqrt();
                let down = if m > 0 { state.get(m - 1) * (T::idx(m) * half).sqrt() } else { Complex::default() };
                up - down
            })
            .collect(),
    )
}

/// Coefficients of x·f (one more mode than the input).
pub fn times_x<T: Real>(state: &HermiteState<T>) -> HermiteState<T> {
    let n = state.n_modes();
    let half = T::of(0.5);
    HermiteState::new(
        (0..=n)
            .map(|m| {
                let up = state.get(m + 1) * (T::idx(m + 1) * half).sqrt();
                let down = if m > 0 { state.get(m - 1) * (T::idx(m) * half).sqrt() } else { Complex::default() };
                up + down
            })
            .collect(),
    )
}

impl<T: Real> Observables<T> {
    /// Closed-form evaluation from the coefficients via the ladder relations.
    pub fn from_coeffs(state: &HermiteState<T>) -> Self {
        let d = derivative(state);
        let xf = times_x(state);
        let kinetic = d.mass();
        let quad_moment = xf.mass();
        Self {
            mass: state.mass(),
            x_mean: xf.inner(state).re,
            momentum: (Complex::<T>::i() * d.inner(state)).re,
            quad_moment,
            kinetic,
            energy: kinetic + quad_moment,
        }
    }
}

/// Observables by quadrature on a unit-scale grid.
pub fn observables<T: Real>(state: &HermiteState<T>, grid: &SpectralGrid<T>) -> Result<Observables<T>> {
    let n = state.n_modes();
    if grid.scale() != T::one() {
        return Err(Error::GridTooSmall("observables need a unit-scale grid".into()));
    }
    if grid.q_nodes() < n + 1 || grid.n_table() < n + 1 {
        return Err(Error::GridTooSmall(format!(
            "{n}-mode state needs at least {} nodes and {} tabulated modes (grid has {} and {}); \
             degree-{} integrands must be exact",
            n + 1,
            n + 1,
            grid.q_nodes(),
            grid.n_table(),
            2 * n
        )));
    }
    let f = grid.synthesize(state)?;
    let df = grid.synthesize(&derivative(state))?;
    let (mut mass, mut x_mean, mut momentum, mut quad, mut kinetic) =
        (T::zero(), T::zero(), T::zero(), T::zero(), T::zero());
    for (((&x, &w), fq), dq) in grid.nodes().iter().zip(grid.comp_weights()).zip(&f).zip(&df) {
        let m = fq.norm_sqr();
        mass += w * m;
        x_mean += w * x * m;
        quad += w * x * x * m;
        kinetic += w * dq.norm_sqr();
        momentum += w * (Complex::<T>::i() * dq * fq.conj()).re;
    }
    Ok(Observables { mass, x_mean, momentum, quad_moment: quad, kinetic, energy: quad + kinetic })
}
