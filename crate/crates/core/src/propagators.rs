//! Linear flows: the harmonic propagator e^{itH}, the Fourier map, and a
//! direct Mehler-kernel evaluator used as an independent check.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hermite::{hermite_all, HermiteState, SpectralGrid};
use crate::scalar::{cis, i_pow, Real};

/// e^{itH}: c_n ↦ e^{it(2n+1)} c_n.
pub fn harmonic_flow<T: Real>(state: &HermiteState<T>, t: T) -> HermiteState<T> {
    HermiteState::new(
        state.coeffs().iter().enumerate().map(|(n, c)| c * cis(t * T::idx(2 * n + 1))).collect(),
    )
}

/// Fourier transform in the convention φ̂_n = iⁿ φ_n.
pub fn fourier_map<T: Real>(state: &HermiteState<T>) -> HermiteState<T> {
    HermiteState::new(state.coeffs().iter().enumerate().map(|(n, c)| c * i_pow::<T>(n)).collect())
}

/// Inverse of [`fourier_map`].
pub fn inverse_fourier_map<T: Real>(state: &HermiteState<T>) -> HermiteState<T> {
    HermiteState::new(
        state.coeffs().iter().enumerate().map(|(n, c)| c * i_pow::<T>(n).conj()).collect(),
    )
}

/// (e^{itH}f)(x_q) at the nodes of `grid` by direct quadrature of the Mehler
/// kernel.
///
/// The kernel is oscillatory, so the y-integral uses its own oversampled
/// rule (at least four times the target grid and never fewer than 160
/// nodes). The usual form of the kernel omits a t-dependent unimodular
/// factor; it is restored here so that the result equals the spectral flow.
pub fn mehler_eval<T: Real>(state: &HermiteState<T>, t: T, grid: &SpectralGrid<T>) -> Result<Vec<Complex<T>>> {
    let two = T::of(2.0);
    let s = (two * t).sin();
    if s.abs() <= T::of(1e-6) {
        return Err(Error::SingularTime { t: t.f64() });
    }
    let co = (two * t).cos();
    let q = (4 * grid.q_nodes()).max(160).max(4 * state.n_modes());
    // Rule for the weight e^{-y²/2}: y = √2·u, W = w e^{u²}√2.
    let rule = crate::hermite::GaussHermite::<T>::new(q)?;
    let sqrt2 = T::SQRT_2();
    let n_max = state.n_modes() - 1;
    let mut ys = Vec::with_capacity(q);
    let mut fw = Vec::with_capacity(q);
    for (&u, &w) in rule.nodes.iter().zip(&rule.comp_weights) {
        let y = u * sqrt2;
        let phi = hermite_all(n_max, y);
        let f: Complex<T> = state.coeffs().iter().zip(&phi).map(|(c, &p)| c * p).sum();
        ys.push(y);
        fw.push(f * (w * sqrt2));
    }
    let norm = T::one() / (two * T::PI() * s.abs()).sqrt();
    let kappa = cis(t) * Complex::new(s.abs(), s.abs() * co / s).sqrt();
    let half = T::of(0.5);
    Ok(grid
        .nodes()
        .iter()
        .map(|&x| {
            let acc: Complex<T> = ys
                .iter()
                .zip(&fw)
                .map(|(&y, f)| {
                    let phase = -((half * (x * x + y * y)) * co - x * y) / s;
                    f * cis(phase)
                })
                .sum();
            acc * norm * kappa
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type S = HermiteState<f64>;

    fn sample() -> S {
        S::new(vec![
            Complex::new(0.4, 0.1),
            Complex::new(-0.3, 0.5),
            Complex::new(0.2, -0.2),
            Complex::new(0.1, 0.6),
        ])
    }

    #[test]
    fn flow_identities() {
        let f = sample();
        assert_eq!(harmonic_flow(&f, 0.0), f);
        let g = harmonic_flow(&f, PI);
        assert!(g.max_abs_diff(&f.scale_real(-1.0)) < 1e-15);
        assert!((harmonic_flow(&f, 0.77).mass() - f.mass()).abs() < 1e-15);
        let ab = harmonic_flow(&harmonic_flow(&f, 0.3), 1.1);
        assert!(ab.max_abs_diff(&harmonic_flow(&f, 1.4)) < 1e-14);
    }

    #[test]
    fn fourier_order_four() {
        let f = sample();
        assert_eq!(fourier_map(&S::basis(0, 3)), S::basis(0, 3));
        let f4 = fourier_map(&fourier_map(&fourier_map(&fourier_map(&f))));
        assert_eq!(f4, f);
        assert_eq!(inverse_fourier_map(&fourier_map(&f)), f);
        assert_eq!(fourier_map(&harmonic_flow(&f, 0.4)), harmonic_flow(&fourier_map(&f), 0.4));
    }

    #[test]
    fn mehler_singular_time() {
        let g = SpectralGrid::<f64>::new(8, 1.0, 4).unwrap();
        assert!(matches!(mehler_eval(&sample(), PI / 2.0, &g), Err(Error::SingularTime { .. })));
        assert!(mehler_eval(&sample(), 0.0, &g).is_err());
    }

    #[test]
    fn mehler_matches_spectral_flow() {
        let g = SpectralGrid::<f64>::new(12, 1.0, 6).unwrap();
        for (state, t) in [(S::basis(0, 1), PI / 8.0), (sample(), 1.0), (sample(), -0.7), (S::basis(3, 4), 2.0)] {
            let direct = mehler_eval(&state, t, &g).unwrap();
            let spectral = g.synthesize(&harmonic_flow(&state, t)).unwrap();
            let err = direct.iter().zip(&spectral).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-8, "t={t} err={err}");
        }
    }
}
