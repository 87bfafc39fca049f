//! Hermite-spectral toolkit for the one-dimensional quintic (k = 2) and
//! cubic (k = 1) resonant Hamiltonian systems of the harmonically trapped
//! nonlinear Schrödinger equation.
//!
//! Every kernel is generic over the scalar type through [`Real`]; the
//! aliases below fix it to `f64`, which is what the experiments and the
//! command-line front end use.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod hermite;
pub mod io;
pub mod multilinear;
pub mod propagators;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub type State = hermite::HermiteState<f64>;
pub type Grid = hermite::SpectralGrid<f64>;
pub type StateF32 = hermite::HermiteState<f32>;
pub type GridF32 = hermite::SpectralGrid<f32>;
pub type C64 = num_complex::Complex<f64>;
