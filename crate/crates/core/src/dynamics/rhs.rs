//! Right-hand sides of the resonant and full-profile equations.

use num_complex::Complex;

use crate::error::Result;
use crate::hermite::HermiteState;
use crate::multilinear::{Normalization, ResonantConfig, ResonantOperator};
use crate::scalar::Real;

/// u_t = F(t, u).
pub trait Rhs<T: Real>: Sync {
    fn eval(&self, t: T, u: &HermiteState<T>) -> Result<HermiteState<T>>;

    /// Truncation the right-hand side works in.
    fn n_modes(&self) -> usize;

    /// Conserved Hamiltonian, when the flow has one.
    fn hamiltonian(&self, _u: &HermiteState<T>) -> Option<T> {
        None
    }
}

fn minus_i<T: Real>(s: HermiteState<T>) -> HermiteState<T> {
    s.scale(Complex::new(T::zero(), -T::one()))
}

/// iu_t = T(u, …, u).
#[derive(Debug, Clone)]
pub struct ResonantRhs<T> {
    op: ResonantOperator<T>,
    // Time-average-normalised operator used for H(u) = ⟨T_avg(u), u⟩.
    avg: ResonantOperator<T>,
}

impl<T: Real> ResonantRhs<T> {
    pub fn new(config: ResonantConfig) -> Result<Self> {
        Ok(Self {
            op: ResonantOperator::new(config)?,
            avg: ResonantOperator::new(config.with_normalization(Normalization::TimeAverage))?,
        })
    }

    pub fn operator(&self) -> &ResonantOperator<T> {
        &self.op
    }
}

impl<T: Real> Rhs<T> for ResonantRhs<T> {
    fn eval(&self, _t: T, u: &HermiteState<T>) -> Result<HermiteState<T>> {
        Ok(minus_i(self.op.apply_power(u)?))
    }

    fn n_modes(&self) -> usize {
        self.op.config().n_modes
    }

    fn hamiltonian(&self, u: &HermiteState<T>) -> Option<T> {
        self.avg.apply_power(u).ok().map(|t| t.inner(u).re)
    }
}

/// iv_t = e^{−itH}(|e^{itH}v|^{2k} e^{itH}v).
#[derive(Debug, Clone)]
pub struct ProfileRhs<T> {
    op: ResonantOperator<T>,
}

impl<T: Real> ProfileRhs<T> {
    pub fn new(config: ResonantConfig) -> Result<Self> {
        Ok(Self { op: ResonantOperator::new(config)? })
    }
}

impl<T: Real> Rhs<T> for ProfileRhs<T> {
    fn eval(&self, t: T, v: &HermiteState<T>) -> Result<HermiteState<T>> {
        Ok(minus_i(self.op.n_t_power(v, t)?))
    }

    fn n_modes(&self) -> usize {
        self.op.config().n_modes
    }
}

/// −i·T(u, …, u) in the configured normalisation.
pub fn rhs_resonant<T: Real>(config: &ResonantConfig, u: &HermiteState<T>) -> Result<HermiteState<T>> {
    Ok(minus_i(ResonantOperator::new(*config)?.apply_power(u)?))
}

/// −i·N_t(v, …, v).
pub fn rhs_full_profile<T: Real>(config: &ResonantConfig, v: &HermiteState<T>, t: T) -> Result<HermiteState<T>> {
    Ok(minus_i(ResonantOperator::new(*config)?.n_t_power(v, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::random_state;

    #[test]
    fn zero_maps_to_zero() {
        let cfg = ResonantConfig::new(2, 5).unwrap();
        let z = HermiteState::<f64>::zeros(5);
        assert_eq!(rhs_resonant(&cfg, &z).unwrap().mass(), 0.0);
        assert_eq!(rhs_full_profile(&cfg, &z, 0.3).unwrap().mass(), 0.0);
    }

    #[test]
    fn ground_state_rotates() {
        let cfg = ResonantConfig::new(2, 5).unwrap();
        let g = HermiteState::<f64>::basis(0, 5);
        let r = rhs_resonant(&cfg, &g).unwrap();
        let omega = 6.0 / (std::f64::consts::PI * 3f64.sqrt());
        assert!(r.max_abs_diff(&g.scale(Complex::new(0.0, -omega))) < 1e-12);
    }

    #[test]
    fn homogeneity() {
        for k in [1, 2] {
            let cfg = ResonantConfig::new(k, 6).unwrap();
            let f = random_state(5, 6);
            let a = rhs_resonant(&cfg, &f.scale_real(2.0)).unwrap();
            let b = rhs_resonant(&cfg, &f).unwrap().scale_real(2f64.powi(2 * k as i32 + 1));
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn profile_preserves_mass_infinitesimally() {
        let cfg = ResonantConfig::new(1, 7).unwrap();
        let v = random_state(9, 7);
        for t in [0.0, 0.4, 1.7] {
            let r = rhs_full_profile(&cfg, &v, t).unwrap();
            // d/dt ‖v‖² = 2 Re⟨v_t, v⟩
            assert!(r.inner(&v).re.abs() < 1e-13);
        }
    }
}
