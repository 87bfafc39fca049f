//! The functionals E_A and the operators T_A by tensor Gauss–Hermite quadrature.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hermite::{hermite_all, GaussHermite, HermiteState};
use crate::multilinear::isometry::Isometry;
use crate::scalar::Real;

/// One argument of E_A: a band-limited state or the fixed Gaussian e^{-x²/2}.
#[derive(Debug, Clone, PartialEq)]
pub enum Slot<T> {
    State(HermiteState<T>),
    Gaussian,
}

impl<T: Real> Slot<T> {
    fn n_modes(&self) -> usize {
        match self {
            Slot::State(s) => s.n_modes(),
            Slot::Gaussian => 1,
        }
    }

    /// Value at a single point.
    pub fn eval(&self, x: T) -> Complex<T> {
        match self {
            Slot::Gaussian => Complex::new((-T::of(0.5) * x * x).exp(), T::zero()),
            Slot::State(s) => {
                let phi = hermite_all(s.n_modes() - 1, x);
                s.coeffs().iter().zip(&phi).map(|(c, &p)| c * p).sum()
            }
        }
    }
}

impl<T> From<HermiteState<T>> for Slot<T> {
    fn from(s: HermiteState<T>) -> Self {
        Slot::State(s)
    }
}

impl<T: Clone> From<&HermiteState<T>> for Slot<T> {
    fn from(s: &HermiteState<T>) -> Self {
        Slot::State(s.clone())
    }
}

pub(crate) fn check_dim<T: Real>(a: &Isometry<T>) -> Result<usize> {
    let d = a.dim();
    if !(1..=3).contains(&d) {
        return Err(Error::DimensionMismatch(format!("E_A is implemented for dimensions 1 to 3, got {d}")));
    }
    let dev = a.orthogonality_defect();
    if dev > super::isometry::ISOMETRY_TOL {
        return Err(Error::NotIsometry { deviation: dev });
    }
    Ok(d)
}

/// Tensor rule in `dim` variables: node coordinates and weights
/// ∏ w_q e^{y_q²}, so that Σ W(x) F(x) = ∫F for F = poly·e^{-|x|²}.
pub(crate) struct TensorRule<T> {
    pub dim: usize,
    pub axis: GaussHermite<T>,
}

impl<T: Real> TensorRule<T> {
    /// Per-axis Q = dim·(N−1)+1 is exact for 2·dim factors of N modes.
    pub fn for_modes(dim: usize, n_modes: usize) -> Result<Self> {
        Ok(Self { dim, axis: GaussHermite::new(dim * (n_modes.max(1) - 1) + 1)? })
    }

    pub fn q(&self) -> usize {
        self.axis.len()
    }

    /// Multi-index of flat node `idx`, most significant axis first.
    pub fn multi(&self, mut idx: usize) -> [usize; 3] {
        let q = self.q();
        let mut out = [0; 3];
        for a in (0..self.dim).rev() {
            out[a] = idx % q;
            idx /= q;
        }
        out
    }

    pub fn n_points(&self) -> usize {
        self.q().pow(self.dim as u32)
    }

    pub fn point(&self, m: &[usize; 3]) -> ([T; 3], T) {
        let mut x = [T::zero(); 3];
        let mut w = T::one();
        for a in 0..self.dim {
            x[a] = self.axis.nodes[m[a]];
            w *= self.axis.comp_weights[m[a]];
        }
        (x, w)
    }
}

fn apply3<T: Real>(a: &Isometry<T>, x: &[T; 3]) -> [T; 3] {
    let d = a.dim();
    let mut y = [T::zero(); 3];
    for (i, yi) in y.iter_mut().enumerate().take(d) {
        *yi = (0..d).map(|j| a.get(i, j) * x[j]).sum();
    }
    y
}

/// E_A(f_1, …, f_{2n}) = ∫ ∏_k f_k((Ax)_k) · conj(f_{n+k}(x_k)) dx.
pub fn e_a_eval<T: Real>(a: &Isometry<T>, slots: &[Slot<T>]) -> Result<Complex<T>> {
    let d = check_dim(a)?;
    if slots.len() != 2 * d {
        return Err(Error::SlotMismatch(format!("{} slots for a {d}-dimensional isometry", slots.len())));
    }
    let n = slots.iter().map(Slot::n_modes).max().unwrap_or(1);
    let rule = TensorRule::for_modes(d, n)?;
    let q = rule.q();
    // conj(f_{n+k}) only depends on the k-th coordinate.
    let conj_tab: Vec<Vec<Complex<T>>> =
        (0..d).map(|k| rule.axis.nodes.iter().map(|&x| slots[d + k].eval(x).conj()).collect()).collect();
    let outer: Vec<Complex<T>> = (0..q)
        .into_par_iter()
        .map(|i0| {
            let inner = q.pow(d as u32 - 1);
            let mut acc = Complex::zero();
            for r in 0..inner {
                let m = rule.multi(i0 * inner + r);
                let (x, w) = rule.point(&m);
                let y = apply3(a, &x);
                let mut v = Complex::new(w, T::zero());
                for k in 0..d {
                    v = v * slots[k].eval(y[k]) * conj_tab[k][m[k]];
                }
                acc += v;
            }
            acc
        })
        .collect();
    Ok(outer.into_iter().sum())
}

/// T_A(f_1, …, f_{2n−1}) by duality,
/// ⟨T_A, g⟩ = 2 Σ_k E_A(f_1, …, f_{n+k−1}, g, f_{n+k}, …, f_{2n−1}),
/// projected onto modes 0..n_out.
pub fn t_a_apply<T: Real>(a: &Isometry<T>, inputs: &[Slot<T>], n_out: usize) -> Result<HermiteState<T>> {
    let d = check_dim(a)?;
    if inputs.len() != 2 * d - 1 {
        return Err(Error::SlotMismatch(format!(
            "{} inputs for a {d}-dimensional isometry (expected {})",
            inputs.len(),
            2 * d - 1
        )));
    }
    let n = inputs.iter().map(Slot::n_modes).max().unwrap_or(1).max(n_out);
    let rule = TensorRule::for_modes(d, n)?;
    let q = rule.q();
    let phi: Vec<Vec<T>> = rule.axis.nodes.iter().map(|&x| hermite_all(n_out.max(1) - 1, x)).collect();
    // Conjugate-side inputs f_{n+1}..f_{2n-1}, tabulated on the axis nodes.
    let conj_tab: Vec<Vec<Complex<T>>> = (0..d - 1)
        .map(|j| rule.axis.nodes.iter().map(|&x| inputs[d + j].eval(x).conj()).collect())
        .collect();
    let partials: Vec<Vec<Complex<T>>> = (0..q)
        .into_par_iter()
        .map(|i0| {
            let inner = q.pow(d as u32 - 1);
            let mut out = vec![Complex::zero(); n_out];
            for r in 0..inner {
                let m = rule.multi(i0 * inner + r);
                let (x, w) = rule.point(&m);
                let y = apply3(a, &x);
                let mut base = Complex::new(w, T::zero());
                for k in 0..d {
                    base *= inputs[k].eval(y[k]);
                }
                // g sits in conjugate slot `pos`; remaining conjugate slots
                // take f_{n+1}.. in order.
                for pos in 0..d {
                    let mut v = base;
                    let mut next = 0;
                    for k in 0..d {
                        if k != pos {
                            v *= conj_tab[next][m[k]];
                            next += 1;
                        }
                    }
                    for (o, &p) in out.iter_mut().zip(&phi[m[pos]]) {
                        *o += v * p;
                    }
                }
            }
            out
        })
        .collect();
    let two = T::of(2.0);
    let mut coeffs = vec![Complex::zero(); n_out];
    for p in partials {
        for (c, v) in coeffs.iter_mut().zip(p) {
            *c += v;
        }
    }
    Ok(HermiteState::new(coeffs.into_iter().map(|c| c * two).collect()))
}

/// Kind of a slot in [`e_a_hermite_tensor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotKind {
    /// Runs over φ_0..φ_{n−1}.
    Free,
    Gaussian,
}

/// All values E_A(φ_{i_1}, …) with every `Free` slot running over modes
/// below `n`, flattened row-major over the free slots in order.
///
/// For each choice of the non-conjugated indices the integrand is
/// contracted axis by axis against the conjugated basis tables, which
/// costs O(n^{d+1} Q^d) instead of O(n^{2d} Q^d).
pub fn e_a_hermite_tensor<T: Real>(a: &Isometry<T>, kinds: &[SlotKind], n: usize) -> Result<Vec<T>> {
    let d = check_dim(a)?;
    if kinds.len() != 2 * d {
        return Err(Error::SlotMismatch(format!("{} slot kinds for dimension {d}", kinds.len())));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("tensor needs at least one mode".into()));
    }
    let rule = TensorRule::for_modes(d, n)?;
    let q = rule.q();
    let gauss = |x: T| (-T::of(0.5) * x * x).exp();
    let np = rule.n_points();

    // Non-conjugated factors at every tensor node: slot k, mode i, node.
    let width = |kind: SlotKind| if kind == SlotKind::Free { n } else { 1 };
    let mut nc: Vec<Vec<T>> = (0..d).map(|k| vec![T::zero(); width(kinds[k]) * np]).collect();
    let mut wts = vec![T::zero(); np];
    for idx in 0..np {
        let m = rule.multi(idx);
        let (x, w) = rule.point(&m);
        wts[idx] = w;
        let y = apply3(a, &x);
        for k in 0..d {
            if kinds[k] == SlotKind::Free {
                for (i, v) in hermite_all(n - 1, y[k]).into_iter().enumerate() {
                    nc[k][i * np + idx] = v;
                }
            } else {
                nc[k][idx] = gauss(y[k]);
            }
        }
    }
    // Conjugated factors on one axis: slot k, mode j, axis node.
    let conj: Vec<Vec<Vec<T>>> = (0..d)
        .map(|k| {
            let rows: Vec<Vec<T>> = rule.axis.nodes.iter().map(|&x| hermite_all(n - 1, x)).collect();
            if kinds[d + k] == SlotKind::Free {
                (0..n).map(|j| (0..q).map(|p| rows[p][j]).collect()).collect()
            } else {
                vec![rule.axis.nodes.iter().map(|&x| gauss(x)).collect()]
            }
        })
        .collect();

    let nc_counts: Vec<usize> = (0..d).map(|k| width(kinds[k])).collect();
    let c_counts: Vec<usize> = (0..d).map(|k| width(kinds[d + k])).collect();
    let n_nc: usize = nc_counts.iter().product();
    let n_c: usize = c_counts.iter().product();

    let blocks: Vec<Vec<T>> = (0..n_nc)
        .into_par_iter()
        .map(|flat| {
            let mut idx = [0usize; 3];
            let mut r = flat;
            for k in (0..d).rev() {
                idx[k] = r % nc_counts[k];
                r /= nc_counts[k];
            }
            let mut f: Vec<T> = wts.clone();
            for k in 0..d {
                let row = &nc[k][idx[k] * np..(idx[k] + 1) * np];
                for (fv, &v) in f.iter_mut().zip(row) {
                    *fv *= v;
                }
            }
            // Contract the last axis first; `f` is laid out as
            // [conj indices so far][remaining axes].
            let mut done = 1usize;
            let mut remaining = np;
            for k in (0..d).rev() {
                remaining /= q;
                let tab = &conj[k];
                let cnt = c_counts[k];
                let mut g = vec![T::zero(); remaining * cnt * done];
                for head in 0..remaining {
                    for p in 0..q {
                        let src = &f[(head * q + p) * done..(head * q + p + 1) * done];
                        for (j, row) in tab.iter().enumerate() {
                            let b = row[p];
                            let dst = &mut g[(head * cnt + j) * done..(head * cnt + j + 1) * done];
                            for (dv, &sv) in dst.iter_mut().zip(src) {
                                *dv += b * sv;
                            }
                        }
                    }
                }
                f = g;
                done *= cnt;
            }
            // Result is ordered with axis 0's conj index most significant.
            f
        })
        .collect();
    let mut out = Vec::with_capacity(n_nc * n_c);
    for b in blocks {
        out.extend(b);
    }
    Ok(out)
}
