//! Hermite-coefficient representation of L² functions.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// Coefficients c_n = ⟨f, φ_n⟩ of a band-limited function.
///
/// Binary operations pad the shorter operand with zeros; truncation only
/// happens through [`HermiteState::truncated`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteState<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> HermiteState<T> {
    /// Wraps a coefficient vector. An empty vector becomes a single zero mode.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex::zero());
        }
        Self { coeffs }
    }

    pub fn zeros(n_modes: usize) -> Self {
        Self::new(vec![Complex::zero(); n_modes])
    }

    /// φ_index embedded in `n_modes` modes (grown if too small).
    pub fn basis(index: usize, n_modes: usize) -> Self {
        let mut s = Self::zeros(n_modes.max(index + 1));
        s.coeffs[index] = Complex::new(T::one(), T::zero());
        s
    }

    pub fn from_real(values: &[T]) -> Self {
        Self::new(values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    pub fn n_modes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex<T>> {
        self.coeffs
    }

    /// Coefficient n, zero beyond the stored range.
    pub fn get(&self, n: usize) -> Complex<T> {
        self.coeffs.get(n).copied().unwrap_or_else(Complex::zero)
    }

    /// Zero-padded copy with at least `n_modes` modes.
    pub fn padded(&self, n_modes: usize) -> Self {
        let mut c = self.coeffs.clone();
        if c.len() < n_modes {
            c.resize(n_modes, Complex::zero());
        }
        Self { coeffs: c }
    }

    /// Copy keeping only the first `n_modes` modes.
    pub fn truncated(&self, n_modes: usize) -> Self {
        Self::new(self.coeffs.iter().take(n_modes).copied().collect())
    }

    /// Σ|c_n|².
    pub fn mass(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn l2_norm(&self) -> T {
        self.mass().sqrt()
    }

    /// ‖H^{s/2} f‖ = (Σ (2n+1)^s |c_n|²)^{1/2}.
    pub fn hs_norm(&self, s: T) -> T {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (T::idx(2 * n + 1)).powf(s) * c.norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    /// Σ(2n+1)|c_n|² = ⟨Hf, f⟩.
    pub fn energy(&self) -> T {
        self.coeffs.iter().enumerate().map(|(n, c)| T::idx(2 * n + 1) * c.norm_sqr()).sum()
    }

    /// ⟨self, other⟩ = ∫ self·conj(other).
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn scale_real(&self, factor: T) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn conj(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// Unit-L² copy; the zero state is returned unchanged.
    pub fn normalized(&self) -> Self {
        let n = self.l2_norm();
        if n == T::zero() {
            self.clone()
        } else {
            self.scale_real(T::one() / n)
        }
    }

    /// self + factor·other, padding as needed.
    pub fn axpy(&self, factor: Complex<T>, other: &Self) -> Self {
        let n = self.n_modes().max(other.n_modes());
        Self { coeffs: (0..n).map(|i| self.get(i) + factor * other.get(i)).collect() }
    }

    /// max_n |self_n − other_n| over the padded range.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let n = self.n_modes().max(other.n_modes());
        (0..n).map(|i| (self.get(i) - other.get(i)).norm()).fold(T::zero(), T::max)
    }

    /// ‖self − other‖_{L²}.
    pub fn l2_distance(&self, other: &Self) -> T {
        (self - other).l2_norm()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Converts the scalar type.
    pub fn cast<U: Real>(&self) -> HermiteState<U> {
        HermiteState {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| Complex::new(U::of(c.re.f64()), U::of(c.im.f64())))
                .collect(),
        }
    }
}

fn zip_pad<T: Real>(
    a: &HermiteState<T>,
    b: &HermiteState<T>,
    f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>,
) -> HermiteState<T> {
    let n = a.n_modes().max(b.n_modes());
    HermiteState { coeffs: (0..n).map(|i| f(a.get(i), b.get(i))).collect() }
}

impl<T: Real> Add for &HermiteState<T> {
    type Output = HermiteState<T>;
    fn add(self, rhs: Self) -> HermiteState<T> {
        zip_pad(self, rhs, |a, b| a + b)
    }
}

impl<T: Real> Sub for &HermiteState<T> {
    type Output = HermiteState<T>;
    fn sub(self, rhs: Self) -> HermiteState<T> {
        zip_pad(self, rhs, |a, b| a - b)
    }
}

impl<T: Real> Add for HermiteState<T> {
    type Output = HermiteState<T>;
    fn add(self, rhs: Self) -> HermiteState<T> {
        &self + &rhs
    }
}

impl<T: Real> Sub for HermiteState<T> {
    type Output = HermiteState<T>;
    fn sub(self, rhs: Self) -> HermiteState<T> {
        &self - &rhs
    }
}

impl<T: Real> Neg for &HermiteState<T> {
    type Output = HermiteState<T>;
    fn neg(self) -> HermiteState<T> {
        HermiteState { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<T: Real> Mul<Complex<T>> for &HermiteState<T> {
    type Output = HermiteState<T>;
    fn mul(self, rhs: Complex<T>) -> HermiteState<T> {
        self.scale(rhs)
    }
}
