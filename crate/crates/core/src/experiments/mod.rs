//! Reproducible experiment recipes built on the lower modules.

pub mod approx_study;
pub mod bounds;
pub mod random;
pub mod report;
pub mod sharp;
pub mod stationary;
pub mod symmetry;
pub mod transforms;

pub use approx_study::{fit_slope, run_approx_study, ApproxStudy};
pub use bounds::{operator_bound, run_bounds_check, BoundsReport};
pub use random::{random_state, StateSampler};
pub use report::{sci, Report};
pub use sharp::{run_sharp_constant_check, sharp_constant, SharpReport};
pub use stationary::{run_stationary_table, StationaryTable};
pub use symmetry::{run_symmetry_suite, SymmetryOptions, SymmetryReport};
pub use transforms::{Reprojector, Symmetry};
