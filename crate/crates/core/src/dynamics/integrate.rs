//! Fixed-step classical RK4 with invariant monitoring.

use serde::Serialize;

use crate::dynamics::rhs::Rhs;
use crate::error::{Error, Result};
use crate::hermite::{observables, HermiteState, SpectralGrid};
use crate::scalar::Real;

/// Quantities recorded at every sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantRecord {
    pub t: f64,
    pub mass: f64,
    pub x_mean: f64,
    pub momentum: f64,
    pub quad_moment: f64,
    pub kinetic: f64,
    pub energy: f64,
    /// NaN when the flow has no Hamiltonian.
    pub hamiltonian: f64,
}

#[derive(Debug, Clone)]
pub struct Trajectory<T> {
    pub times: Vec<T>,
    pub states: Vec<HermiteState<T>>,
    pub invariants: Vec<InvariantRecord>,
}

impl<T: Real> Trajectory<T> {
    pub fn final_state(&self) -> &HermiteState<T> {
        self.states.last().expect("trajectory has at least the initial sample")
    }

    /// max_i |q(i) − q(0)| for the quantity selected by `pick`.
    pub fn drift(&self, pick: impl Fn(&InvariantRecord) -> f64) -> f64 {
        let q0 = pick(&self.invariants[0]);
        self.invariants.iter().map(|r| (pick(r) - q0).abs()).fold(0.0, f64::max)
    }

    /// CSV with header `t,mass,x_mean,momentum,energy,hamiltonian`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,mass,x_mean,momentum,energy,hamiltonian\n");
        for r in &self.invariants {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.t, r.mass, r.x_mean, r.momentum, r.energy, r.hamiltonian
            ));
        }
        out
    }
}

/// Number of steps and the step actually used to land on t_end.
pub fn step_plan(t_end: f64, dt: f64) -> Result<(usize, f64)> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    if !(t_end >= 0.0) || !t_end.is_finite() {
        return Err(Error::InvalidArgument(format!("t_end must be nonnegative, got {t_end}")));
    }
    let n = (t_end / dt - 1e-9).ceil().max(0.0) as usize;
    Ok((n, if n == 0 { 0.0 } else { t_end / n as f64 }))
}

/// One RK4 step.
pub fn rk4_step<T: Real, R: Rhs<T> + ?Sized>(rhs: &R, t: T, u: &HermiteState<T>, h: T) -> Result<HermiteState<T>> {
    let half = T::of(0.5) * h;
    let k1 = rhs.eval(t, u)?;
    let k2 = rhs.eval(t + half, &u.axpy(half.into(), &k1))?;
    let k3 = rhs.eval(t + half, &u.axpy(half.into(), &k2))?;
    let k4 = rhs.eval(t + h, &u.axpy(h.into(), &k3))?;
    let sixth = h / T::of(6.0);
    let mut next = u.clone();
    let n = next.n_modes().max(k1.n_modes());
    next = next.padded(n);
    for (i, c) in next.coeffs_mut().iter_mut().enumerate() {
        *c += (k1.get(i) + (k2.get(i) + k3.get(i)) * T::of(2.0) + k4.get(i)) * sixth;
    }
    Ok(next)
}

fn record<T: Real, R: Rhs<T> + ?Sized>(
    rhs: &R,
    grid: &SpectralGrid<T>,
    t: T,
    u: &HermiteState<T>,
) -> Result<InvariantRecord> {
    let o = observables(u, grid)?;
    Ok(InvariantRecord {
        t: t.f64(),
        mass: o.mass.f64(),
        x_mean: o.x_mean.f64(),
        momentum: o.momentum.f64(),
        quad_moment: o.quad_moment.f64(),
        kinetic: o.kinetic.f64(),
        energy: o.energy.f64(),
        hamiltonian: rhs.hamiltonian(u).map_or(f64::NAN, |h| h.f64()),
    })
}

/// Integrates from t = 0 to t_end, sampling every `sample_every` steps and
/// always at both ends.
pub fn integrate<T: Real, R: Rhs<T> + ?Sized>(
    rhs: &R,
    state0: &HermiteState<T>,
    t_end: f64,
    dt: f64,
    sample_every: usize,
) -> Result<Trajectory<T>> {
    if sample_every == 0 {
        return Err(Error::InvalidArgument("sample_every must be at least 1".into()));
    }
    let n_modes = rhs.n_modes();
    if state0.n_modes() > n_modes {
        return Err(Error::DimensionMismatch(format!(
            "initial state has {} modes, the flow is truncated to {n_modes}",
            state0.n_modes()
        )));
    }
    let (steps, h) = step_plan(t_end, dt)?;
    let h = T::of(h);
    let grid = SpectralGrid::for_observables(n_modes)?;
    let mut u = state0.padded(n_modes);
    let mut traj = Trajectory { times: vec![T::zero()], states: vec![u.clone()], invariants: Vec::new() };
    traj.invariants.push(record(rhs, &grid, T::zero(), &u)?);
    for s in 0..steps {
        let t = T::idx(s) * h;
        let next = rk4_step(rhs, t, &u, h)?;
        if !next.is_finite() {
            return Err(Error::Divergence { last_good_time: t.f64() });
        }
        u = next;
        if (s + 1) % sample_every == 0 || s + 1 == steps {
            let t1 = T::idx(s + 1) * h;
            traj.times.push(t1);
            traj.invariants.push(record(rhs, &grid, t1, &u)?);
            traj.states.push(u.clone());
        }
    }
    Ok(traj)
}
