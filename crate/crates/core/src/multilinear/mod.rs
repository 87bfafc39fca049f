//! Multilinear functionals E_A, the operators T_A, the quintic/cubic
//! resonant operators and the isometry decomposition.

pub mod decompose;
pub mod functional;
pub mod isometry;
pub mod resonant;
pub mod stationary;

pub use decompose::{decompose_isometry, Decomposition};
pub use functional::{e_a_eval, e_a_hermite_tensor, t_a_apply, Slot, SlotKind};
pub use isometry::{a_lambda, b_lambda, lambda_to_theta, rotation_about, Isometry};
pub use resonant::{
    e4_eval, e6_eval, e_functional, hamiltonian, resonant_apply, theta_rotation, FunctionalRoute, Normalization, DEFAULT_M_THETA,
    OperatorRoute, ResonantConfig, ResonantOperator, DIRECT_SUM_MAX_MODES,
};
pub use stationary::{stationary_eigenvalue, StationaryWave};
