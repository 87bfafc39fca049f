//! Time integration of the resonant and full-profile equations.

pub mod approx;
pub mod integrate;
pub mod rhs;

pub use approx::{approximation_experiment, ApproxCurve, ApproxOptions};
pub use integrate::{integrate, rk4_step, step_plan, InvariantRecord, Trajectory};
pub use rhs::{rhs_full_profile, rhs_resonant, ProfileRhs, ResonantRhs, Rhs};
