//! Hermite basis, Gauss–Hermite quadrature and coefficient/grid transforms.

pub mod basis;
pub mod grid;
pub mod observables;
pub mod quadrature;
pub mod state;

pub use basis::{hermite_all, hermite_eval};
pub use grid::{analyze, build_grid, synthesize, SpectralGrid};
pub use observables::{derivative, observables, times_x, Observables};
pub use quadrature::{gauss_hermite_rule, GaussHermite};
pub use state::HermiteState;
