//! The resonant operators T₆ (k = 2) and T₄ (k = 1) and the Hamiltonian
//! functionals E₆/E₄, each computable by several independent routes.
//!
//! Slot convention throughout: the first k+1 arguments enter unconjugated,
//! the last k (and, for functionals, the final test slot) conjugated.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermite::{HermiteState, SpectralGrid};
use crate::multilinear::functional::{e_a_eval, Slot, TensorRule};
use crate::multilinear::isometry::{rotation_about, Isometry};
use crate::propagators::harmonic_flow;
use crate::scalar::Real;

/// Largest truncation accepted by the direct resonant sum.
pub const DIRECT_SUM_MAX_MODES: usize = 12;

/// Default trapezoid count for the rotation-angle integrals.
pub const DEFAULT_M_THETA: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// ⟨T, g⟩ = (2k+2)·E(…, g): right-hand side of Hamilton's equation.
    #[default]
    Hamiltonian,
    /// Plain (2/π)∫_{−π/4}^{π/4} time average.
    TimeAverage,
}

/// How T is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OperatorRoute {
    /// Midpoint average of e^{−itH}[(e^{itH}f₁)…] over [−π/4, π/4].
    TimeAverage,
    /// Σ over resonant index tuples of coefficient products and ∫∏φ.
    DirectSum,
    /// Trapezoid over the rotation angle of T_{R(θ)} (or T_{S(θ)}).
    ThetaIntegral,
}

/// How E₆/E₄ is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionalRoute {
    ThetaIntegral,
    HermiteSum,
    TimeAverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonantConfig {
    /// Arity: 2 for the quintic system, 1 for the cubic.
    pub k: usize,
    pub n_modes: usize,
    /// Midpoint count of the discrete time average.
    pub m_times: usize,
    /// Trapezoid count of the rotation-angle integrals.
    pub m_theta: usize,
    pub normalization: Normalization,
}

impl ResonantConfig {
    /// Smallest valid time count for (k, N).
    pub fn min_m_times(k: usize, n_modes: usize) -> usize {
        (k + 1) * n_modes.saturating_sub(1) / 2 + 1
    }

    /// Validated config with the minimal exact time count.
    pub fn new(k: usize, n_modes: usize) -> Result<Self> {
        let cfg = Self {
            k,
            n_modes,
            m_times: Self::min_m_times(k, n_modes),
            m_theta: DEFAULT_M_THETA,
            normalization: Normalization::Hamiltonian,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    pub fn with_m_times(mut self, m: usize) -> Result<Self> {
        self.m_times = m;
        self.validate()?;
        Ok(self)
    }

    pub fn with_m_theta(mut self, m: usize) -> Result<Self> {
        self.m_theta = m;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.k) {
            return Err(Error::InvalidConfig(format!("k must be 1 (cubic) or 2 (quintic), got {}", self.k)));
        }
        if self.n_modes == 0 {
            return Err(Error::InvalidConfig("n_modes must be at least 1".into()));
        }
        if self.m_times == 0 || 2 * self.m_times <= (self.k + 1) * (self.n_modes - 1) {
            return Err(Error::InvalidConfig(format!(
                "m_times = {} is too small: need 2M > (k+1)(N-1) = {}; use m_times >= {}",
                self.m_times,
                (self.k + 1) * (self.n_modes - 1),
                Self::min_m_times(self.k, self.n_modes)
            )));
        }
        if self.m_theta == 0 {
            return Err(Error::InvalidConfig("m_theta must be at least 1".into()));
        }
        Ok(())
    }

    /// Number of inputs of T.
    pub fn arity(&self) -> usize {
        2 * self.k + 1
    }

    /// (2k+2) for the Hamiltonian normalisation, 1 otherwise.
    pub fn factor<T: Real>(&self) -> T {
        match self.normalization {
            Normalization::Hamiltonian => T::idx(2 * self.k + 2),
            Normalization::TimeAverage => T::one(),
        }
    }
}

/// Weight in front of the rotation-angle integral: E = c·∫₀^{2π} E_{R(θ)} dθ.
fn theta_constant<T: Real>(k: usize) -> T {
    let pi2 = T::PI() * T::PI();
    match k {
        2 => T::one() / (T::of(2.0) * T::of(3.0).sqrt() * pi2),
        _ => T::one() / (T::of(2.0) * T::SQRT_2() * pi2),
    }
}

/// Rotation of the angle integral for arity k.
pub fn theta_rotation<T: Real>(k: usize, theta: T) -> Isometry<T> {
    let axis = if k == 2 { [T::one(), T::one(), T::one()] } else { [T::zero(), T::one(), T::one()] };
    rotation_about(axis, theta).expect("nonzero axis")
}

/// Precomputed grid and tables for repeated applications at a fixed config.
#[derive(Debug, Clone)]
pub struct ResonantOperator<T> {
    config: ResonantConfig,
    grid: SpectralGrid<T>,
    /// e^{i t_j} at the midpoint times.
    times: Vec<T>,
}

impl<T: Real> ResonantOperator<T> {
    pub fn new(config: ResonantConfig) -> Result<Self> {
        config.validate()?;
        let grid = SpectralGrid::for_resonant(config.n_modes, config.k)?;
        let m = config.m_times;
        let times = (0..m)
            .map(|j| -T::FRAC_PI_4() + (T::idx(j) + T::of(0.5)) * T::PI() / T::idx(2 * m))
            .collect();
        Ok(Self { config, grid, times })
    }

    pub fn config(&self) -> &ResonantConfig {
        &self.config
    }

    pub fn grid(&self) -> &SpectralGrid<T> {
        &self.grid
    }

    fn check_inputs(&self, inputs: &[&HermiteState<T>]) -> Result<()> {
        if inputs.len() != self.config.arity() {
            return Err(Error::SlotMismatch(format!(
                "T needs {} inputs for k = {}, got {}",
                self.config.arity(),
                self.config.k,
                inputs.len()
            )));
        }
        if let Some(s) = inputs.iter().find(|s| s.n_modes() > self.config.n_modes) {
            return Err(Error::DimensionMismatch(format!(
                "input has {} modes but the operator is configured for {}",
                s.n_modes(),
                self.config.n_modes
            )));
        }
        Ok(())
    }

    pub fn apply(&self, inputs: &[&HermiteState<T>], route: OperatorRoute) -> Result<HermiteState<T>> {
        self.check_inputs(inputs)?;
        let out = match route {
            OperatorRoute::TimeAverage => self.time_average(inputs)?,
            OperatorRoute::DirectSum => self.direct_sum(inputs)?,
            OperatorRoute::ThetaIntegral => self.theta_integral(inputs)?,
        };
        Ok(out.scale_real(self.config.factor()))
    }

    /// T(u, …, u), sharing one synthesis for all slots.
    pub fn apply_power(&self, u: &HermiteState<T>) -> Result<HermiteState<T>> {
        if u.n_modes() > self.config.n_modes {
            return Err(Error::DimensionMismatch(format!(
                "state has {} modes but the operator is configured for {}",
                u.n_modes(),
                self.config.n_modes
            )));
        }
        let k = self.config.k;
        let out = self.average_over_times(|t| {
            let v = self.grid.synthesize(&harmonic_flow(u, t))?;
            Ok(v.iter().map(|z| z * z.norm_sqr().powi(k as i32)).collect())
        })?;
        Ok(out.scale_real(self.config.factor()))
    }

    /// Time-average normalised N_t(f₁, …) projected onto the configured modes:
    /// e^{−itH}[(e^{itH}f₁)…(e^{itH}f_{k+1})·conj(e^{itH}f_{k+2})…].
    pub fn n_t(&self, inputs: &[&HermiteState<T>], t: T) -> Result<HermiteState<T>> {
        self.check_inputs(inputs)?;
        let prod = self.pointwise_product(inputs, t)?;
        let proj = self.grid.analyze(&prod)?;
        Ok(harmonic_flow(&proj, -t))
    }

    /// N_t(u, …, u) = e^{−itH}(|e^{itH}u|^{2k} e^{itH}u).
    pub fn n_t_power(&self, u: &HermiteState<T>, t: T) -> Result<HermiteState<T>> {
        let k = self.config.k as i32;
        let v = self.grid.synthesize(&harmonic_flow(u, t))?;
        let prod: Vec<Complex<T>> = v.iter().map(|z| z * z.norm_sqr().powi(k)).collect();
        Ok(harmonic_flow(&self.grid.analyze(&prod)?, -t))
    }

    fn pointwise_product(&self, inputs: &[&HermiteState<T>], t: T) -> Result<Vec<Complex<T>>> {
        let k = self.config.k;
        let mut prod = vec![Complex::new(T::one(), T::zero()); self.grid.q_nodes()];
        for (i, f) in inputs.iter().enumerate() {
            let v = self.grid.synthesize(&harmonic_flow(f, t))?;
            for (p, z) in prod.iter_mut().zip(v) {
                *p *= if i <= k { z } else { z.conj() };
            }
        }
        Ok(prod)
    }

    fn average_over_times<F>(&self, product_at: F) -> Result<HermiteState<T>>
    where
        F: Fn(T) -> Result<Vec<Complex<T>>> + Sync,
    {
        let parts: Vec<Result<HermiteState<T>>> = self
            .times
            .par_iter()
            .map(|&t| {
                let prod = product_at(t)?;
                Ok(harmonic_flow(&self.grid.analyze(&prod)?, -t))
            })
            .collect();
        let mut acc = HermiteState::zeros(self.config.n_modes);
        for p in parts {
            let p = p?;
            for (a, b) in acc.coeffs_mut().iter_mut().zip(p.coeffs()) {
                *a += b;
            }
        }
        Ok(acc.scale_real(T::one() / T::idx(self.times.len())))
    }

    fn time_average(&self, inputs: &[&HermiteState<T>]) -> Result<HermiteState<T>> {
        self.average_over_times(|t| self.pointwise_product(inputs, t))
    }

    fn direct_sum(&self, inputs: &[&HermiteState<T>]) -> Result<HermiteState<T>> {
        let n = self.config.n_modes;
        if n > DIRECT_SUM_MAX_MODES {
            return Err(Error::TooLarge(format!(
                "direct resonant sum is limited to N <= {DIRECT_SUM_MAX_MODES} (got {n}); use the time-average route"
            )));
        }
        let k = self.config.k;
        let padded: Vec<HermiteState<T>> = inputs.iter().map(|s| s.padded(n)).collect();
        let g = &self.grid;
        let nq = g.q_nodes();
        let w = g.comp_weights();
        // Unconjugated indices a (k+1 of them) and conjugated b (k of them):
        // Σa − Σb − m = 0, with ∫∏φ on the product-exact grid.
        let n_a = n.pow(k as u32 + 1);
        let rows: Vec<Vec<Complex<T>>> = (0..n_a)
            .into_par_iter()
            .map(|flat| {
                let mut a = vec![0usize; k + 1];
                let mut r = flat;
                for s in (0..=k).rev() {
                    a[s] = r % n;
                    r /= n;
                }
                let mut out = vec![Complex::zero(); n];
                let coef_a: Complex<T> = a.iter().enumerate().map(|(s, &i)| padded[s].get(i)).product();
                if coef_a.is_zero() {
                    return out;
                }
                let sum_a: usize = a.iter().sum();
                let mut base = w.to_vec();
                for &i in &a {
                    for (bv, &p) in base.iter_mut().zip(g.basis_row(i)) {
                        *bv *= p;
                    }
                }
                let n_b = n.pow(k as u32 - 1);
                for b_head in 0..n_b {
                    let mut b = vec![0usize; k];
                    let mut r = b_head;
                    for s in (0..k - 1).rev() {
                        b[s] = r % n;
                        r /= n;
                    }
                    let head_sum: usize = b[..k - 1].iter().sum();
                    for m in 0..n {
                        // Last conjugated index is fixed by the selection rule.
                        let Some(last) = sum_a.checked_sub(head_sum + m) else { continue };
                        if last >= n {
                            continue;
                        }
                        b[k - 1] = last;
                        let coef_b: Complex<T> =
                            b.iter().enumerate().map(|(s, &i)| padded[k + 1 + s].get(i).conj()).product();
                        if coef_b.is_zero() {
                            continue;
                        }
                        let mut integral = T::zero();
                        let rb: Vec<&[T]> = b.iter().map(|&i| g.basis_row(i)).collect();
                        let rm = g.basis_row(m);
                        for q in 0..nq {
                            let mut v = base[q] * rm[q];
                            for row in &rb {
                                v *= row[q];
                            }
                            integral += v;
                        }
                        out[m] += coef_a * coef_b * integral;
                    }
                }
                out
            })
            .collect();
        let mut coeffs = vec![Complex::zero(); n];
        for row in rows {
            for (c, v) in coeffs.iter_mut().zip(row) {
                *c += v;
            }
        }
        Ok(HermiteState::new(coeffs))
    }

    fn theta_integral(&self, inputs: &[&HermiteState<T>]) -> Result<HermiteState<T>> {
        let k = self.config.k;
        let n = self.config.n_modes;
        let m = self.config.m_theta;
        // Slots of E_R (k = 2): (f₁, f₂, f₃ | f₄, f₅, g);
        // of E_S (k = 1): (G, f₁, f₂ | G, f₃, g).
        let slots: Vec<Slot<T>> = if k == 2 {
            inputs.iter().map(|s| Slot::from(*s)).collect()
        } else {
            vec![Slot::Gaussian, inputs[0].into(), inputs[1].into(), Slot::Gaussian, inputs[2].into()]
        };
        let parts: Vec<Result<HermiteState<T>>> = (0..m)
            .into_par_iter()
            .map(|j| {
                let theta = T::of(2.0) * T::PI() * T::idx(j) / T::idx(m);
                last_slot_operator(&theta_rotation(k, theta), &slots, n)
            })
            .collect();
        let mut acc = HermiteState::zeros(n);
        for p in parts {
            acc = &acc + &p?;
        }
        let step = T::of(2.0) * T::PI() / T::idx(m);
        Ok(acc.scale_real(step * theta_constant::<T>(k)))
    }
}

/// Coefficients of the operator with ⟨S, g⟩ = E_A(slots…, g) (g in the last
/// conjugated slot), projected onto modes below n_out.
pub(crate) fn last_slot_operator<T: Real>(a: &Isometry<T>, slots: &[Slot<T>], n_out: usize) -> Result<HermiteState<T>> {
    let d = a.dim();
    let n = slots
        .iter()
        .map(|s| match s {
            Slot::State(s) => s.n_modes(),
            Slot::Gaussian => 1,
        })
        .max()
        .unwrap_or(1)
        .max(n_out);
    let rule = TensorRule::<T>::for_modes(d, n)?;
    let phi: Vec<Vec<T>> = rule.axis.nodes.iter().map(|&x| crate::hermite::hermite_all(n_out - 1, x)).collect();
    let conj_tab: Vec<Vec<Complex<T>>> = (0..d - 1)
        .map(|j| rule.axis.nodes.iter().map(|&x| slots[d + j].eval(x).conj()).collect())
        .collect();
    let mut coeffs = vec![Complex::zero(); n_out];
    for idx in 0..rule.n_points() {
        let mi = rule.multi(idx);
        let (x, w) = rule.point(&mi);
        let mut v = Complex::new(w, T::zero());
        for i in 0..d {
            let yi: T = (0..d).map(|j| a.get(i, j) * x[j]).sum();
            v *= slots[i].eval(yi);
        }
        for j in 0..d - 1 {
            v *= conj_tab[j][mi[j]];
        }
        for (c, &p) in coeffs.iter_mut().zip(&phi[mi[d - 1]]) {
            *c += v * p;
        }
    }
    Ok(HermiteState::new(coeffs))
}

/// One-shot T(f₁, …, f_{2k+1}).
pub fn resonant_apply<T: Real>(
    config: &ResonantConfig,
    inputs: &[&HermiteState<T>],
    route: OperatorRoute,
) -> Result<HermiteState<T>> {
    ResonantOperator::new(*config)?.apply(inputs, route)
}

/// E(f₁, …, f_{2k+2}) (time-average normalisation, so that E(f,…,f) is the
/// Hamiltonian H_{2k+2}(f)).
pub fn e_functional<T: Real>(
    k: usize,
    f: &[&HermiteState<T>],
    route: FunctionalRoute,
    m_theta: usize,
) -> Result<Complex<T>> {
    if !(1..=2).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must be 1 or 2, got {k}")));
    }
    if f.len() != 2 * k + 2 {
        return Err(Error::SlotMismatch(format!("E needs {} states for k = {k}, got {}", 2 * k + 2, f.len())));
    }
    let n = f.iter().map(|s| s.n_modes()).max().unwrap_or(1);
    match route {
        FunctionalRoute::ThetaIntegral => {
            if m_theta == 0 {
                return Err(Error::InvalidArgument("m_theta must be positive".into()));
            }
            let slots: Vec<Slot<T>> = if k == 2 {
                f.iter().map(|s| Slot::from(*s)).collect()
            } else {
                vec![Slot::Gaussian, f[0].into(), f[1].into(), Slot::Gaussian, f[2].into(), f[3].into()]
            };
            let parts: Vec<Result<Complex<T>>> = (0..m_theta)
                .into_par_iter()
                .map(|j| {
                    let theta = T::of(2.0) * T::PI() * T::idx(j) / T::idx(m_theta);
                    e_a_eval(&theta_rotation(k, theta), &slots)
                })
                .collect();
            let mut acc = Complex::zero();
            for p in parts {
                acc += p?;
            }
            Ok(acc * (T::of(2.0) * T::PI() / T::idx(m_theta) * theta_constant::<T>(k)))
        }
        FunctionalRoute::HermiteSum | FunctionalRoute::TimeAverage => {
            let cfg = ResonantConfig::new(k, n)?.with_normalization(Normalization::TimeAverage);
            let route = if route == FunctionalRoute::HermiteSum {
                OperatorRoute::DirectSum
            } else {
                OperatorRoute::TimeAverage
            };
            let t = resonant_apply(&cfg, &f[..2 * k + 1], route)?;
            Ok(t.inner(f[2 * k + 1]))
        }
    }
}

/// E₆(f₁, …, f₆).
pub fn e6_eval<T: Real>(f: &[&HermiteState<T>; 6], route: FunctionalRoute, m_theta: usize) -> Result<Complex<T>> {
    e_functional(2, f, route, m_theta)
}

/// E₄(f₁, …, f₄).
pub fn e4_eval<T: Real>(f: &[&HermiteState<T>; 4], route: FunctionalRoute, m_theta: usize) -> Result<Complex<T>> {
    e_functional(1, f, route, m_theta)
}

/// H_{2k+2}(f) = E(f, …, f), real up to rounding.
pub fn hamiltonian<T: Real>(k: usize, f: &HermiteState<T>) -> Result<T> {
    let cfg = ResonantConfig::new(k, f.n_modes())?.with_normalization(Normalization::TimeAverage);
    let op = ResonantOperator::new(cfg)?;
    Ok(op.apply_power(f)?.inner(f).re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::StateSampler;

    type S = HermiteState<f64>;

    const H6_PHI0: f64 = 0.183_776_298_473_930_6; // 1/(π√3)
    const H4_PHI0: f64 = 0.398_942_280_401_432_7; // 1/√(2π)

    #[test]
    fn config_validation() {
        assert!(ResonantConfig::new(3, 4).is_err());
        assert!(ResonantConfig::new(2, 0).is_err());
        let c = ResonantConfig::new(2, 8).unwrap();
        assert_eq!(c.m_times, 11);
        assert!(c.with_m_times(10).is_err());
        assert!(ResonantConfig::new(1, 8).unwrap().with_m_times(7).is_err());
        assert!(ResonantConfig::new(1, 1).unwrap().m_times >= 1);
    }

    #[test]
    fn ground_state_functional_all_routes() {
        for (k, want) in [(2usize, H6_PHI0), (1, H4_PHI0)] {
            let g = S::basis(0, 3);
            let f = vec![&g; 2 * k + 2];
            for route in [FunctionalRoute::ThetaIntegral, FunctionalRoute::HermiteSum, FunctionalRoute::TimeAverage] {
                let e = e_functional(k, &f, route, DEFAULT_M_THETA).unwrap();
                assert!((e.re - want).abs() < 1e-12 && e.im.abs() < 1e-14, "k={k} {route:?}: {e}");
            }
            assert!((hamiltonian(k, &g).unwrap() - want).abs() < 1e-13);
        }
    }

    #[test]
    fn ground_state_frequency_all_routes() {
        for (k, omega) in [(2usize, 6.0 * H6_PHI0), (1, 4.0 * H4_PHI0)] {
            let cfg = ResonantConfig::new(k, 5).unwrap();
            let op = ResonantOperator::<f64>::new(cfg).unwrap();
            let g = S::basis(0, 5);
            let inputs = vec![&g; 2 * k + 1];
            for route in [OperatorRoute::TimeAverage, OperatorRoute::DirectSum, OperatorRoute::ThetaIntegral] {
                let t = op.apply(&inputs, route).unwrap();
                assert!(t.max_abs_diff(&g.scale_real(omega)) < 1e-12, "k={k} {route:?}");
            }
            assert!(op.apply_power(&g).unwrap().max_abs_diff(&g.scale_real(omega)) < 1e-12);
        }
    }

    #[test]
    fn routes_agree_on_random_inputs() {
        let mut rng = StateSampler::new(11);
        for k in [1usize, 2] {
            let n = 6;
            let cfg = ResonantConfig::new(k, n).unwrap();
            let op = ResonantOperator::<f64>::new(cfg).unwrap();
            let f: Vec<S> = (0..2 * k + 1).map(|_| rng.state(n)).collect();
            let refs: Vec<&S> = f.iter().collect();
            let a = op.apply(&refs, OperatorRoute::TimeAverage).unwrap();
            let b = op.apply(&refs, OperatorRoute::DirectSum).unwrap();
            let c = op.apply(&refs, OperatorRoute::ThetaIntegral).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12, "k={k} time vs sum {}", a.max_abs_diff(&b));
            assert!(a.max_abs_diff(&c) < 1e-11, "k={k} time vs theta {}", a.max_abs_diff(&c));
            let g = rng.state(n);
            let mut all = refs.clone();
            all.push(&g);
            let e_theta = e_functional(k, &all, FunctionalRoute::ThetaIntegral, 64).unwrap();
            let e_sum = e_functional(k, &all, FunctionalRoute::HermiteSum, 64).unwrap();
            assert!((e_theta - e_sum).norm() < 1e-12);
        }
    }

    #[test]
    fn direct_sum_size_limit() {
        let cfg = ResonantConfig::new(1, 13).unwrap();
        let g = S::basis(0, 13);
        let r = resonant_apply(&cfg, &[&g, &g, &g], OperatorRoute::DirectSum);
        assert!(matches!(r, Err(Error::TooLarge(_))));
    }

    #[test]
    fn averaged_profile_matches_resonant() {
        let mut rng = StateSampler::new(3);
        let cfg = ResonantConfig::new(2, 6).unwrap().with_normalization(Normalization::TimeAverage);
        let op = ResonantOperator::<f64>::new(cfg).unwrap();
        let u = rng.state(6);
        let m = cfg.m_times;
        let mut acc = S::zeros(6);
        for j in 0..m {
            let t = -std::f64::consts::FRAC_PI_4 + (j as f64 + 0.5) * std::f64::consts::PI / (2 * m) as f64;
            acc = &acc + &op.n_t_power(&u, t).unwrap();
        }
        let avg = acc.scale_real(1.0 / m as f64);
        assert!(avg.max_abs_diff(&op.apply_power(&u).unwrap()) < 1e-13);
    }
}
