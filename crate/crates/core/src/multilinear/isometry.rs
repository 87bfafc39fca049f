//! Small orthogonal matrices parameterising the E_A family.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Entrywise tolerance for AᵀA = I and A·axis = axis.
pub const ISOMETRY_TOL: f64 = 1e-12;

/// A real orthogonal `dim × dim` matrix, optionally tagged with an axis it fixes.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry<T> {
    dim: usize,
    entries: Vec<T>,
    fixed_axis: Option<Vec<T>>,
}

impl<T: Real> Isometry<T> {
    /// Validates orthogonality (and the fixed axis, if given).
    pub fn new(rows: Vec<Vec<T>>, fixed_axis: Option<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("isometry must be square".into()));
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        let iso = Self { dim, entries, fixed_axis: None };
        let dev = iso.orthogonality_defect();
        if dev > ISOMETRY_TOL {
            return Err(Error::NotIsometry { deviation: dev });
        }
        match fixed_axis {
            None => Ok(iso),
            Some(axis) => iso.with_fixed_axis(axis),
        }
    }

    /// Attaches fixed-axis metadata after checking A·axis = axis.
    pub fn with_fixed_axis(mut self, axis: Vec<T>) -> Result<Self> {
        if axis.len() != self.dim {
            return Err(Error::DimensionMismatch("axis length differs from matrix size".into()));
        }
        let norm = axis.iter().map(|a| *a * *a).sum::<T>().sqrt();
        if norm == T::zero() {
            return Err(Error::ZeroAxis);
        }
        let unit: Vec<T> = axis.iter().map(|&a| a / norm).collect();
        let image = self.apply(&unit);
        let dev = image.iter().zip(&unit).map(|(a, b)| (*a - *b).abs()).fold(T::zero(), T::max);
        if dev.f64() > ISOMETRY_TOL {
            return Err(Error::InvalidArgument(format!("matrix moves the declared axis by {:e}", dev.f64())));
        }
        self.fixed_axis = Some(unit);
        Ok(self)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![T::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = T::one();
        }
        Self { dim, entries, fixed_axis: None }
    }

    /// Matrix sending e_i to e_{perm[i]}.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut seen = vec![false; dim];
        for &p in perm {
            if p >= dim || seen[p] {
                return Err(Error::InvalidArgument(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let mut entries = vec![T::zero(); dim * dim];
        for (i, &p) in perm.iter().enumerate() {
            entries[p * dim + i] = T::one();
        }
        Ok(Self { dim, entries, fixed_axis: None })
    }

    /// Diagonal matrix of signs.
    pub fn signs(signs: &[bool]) -> Self {
        let mut m = Self::identity(signs.len());
        for (i, &neg) in signs.iter().enumerate() {
            if neg {
                m.entries[i * m.dim + i] = -T::one();
            }
        }
        m
    }

    /// Planar rotation [[cos, −sin], [sin, cos]].
    pub fn rotation_2d(theta: T) -> Self {
        let (s, c) = theta.sin_cos();
        Self { dim: 2, entries: vec![c, -s, s, c], fixed_axis: None }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn fixed_axis(&self) -> Option<&[T]> {
        self.fixed_axis.as_deref()
    }

    /// A·x.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![T::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.get(i, j);
            }
        }
        Self { dim: d, entries, fixed_axis: self.fixed_axis.clone() }
    }

    /// self·other; fixed-axis metadata is kept only if both fix it.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("cannot compose isometries of different sizes".into()));
        }
        let d = self.dim;
        let mut entries = vec![T::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[i * d + j] = (0..d).map(|l| self.get(i, l) * other.get(l, j)).sum();
            }
        }
        let fixed_axis = match (&self.fixed_axis, &other.fixed_axis) {
            (Some(a), Some(b)) if a == b => Some(a.clone()),
            _ => None,
        };
        Ok(Self { dim: d, entries, fixed_axis })
    }

    /// max |AᵀA − I|.
    pub fn orthogonality_defect(&self) -> f64 {
        let d = self.dim;
        let mut dev = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let s: T = (0..d).map(|l| self.get(l, i) * self.get(l, j)).sum();
                let want = if i == j { T::one() } else { T::zero() };
                dev = dev.max((s - want).abs().f64());
            }
        }
        dev
    }

    pub fn det(&self) -> T {
        let g = |i, j| self.get(i, j);
        match self.dim {
            0 => T::one(),
            1 => g(0, 0),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            3 => {
                g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
            _ => {
                // Gaussian elimination with partial pivoting.
                let d = self.dim;
                let mut m = self.entries.clone();
                let mut det = T::one();
                for c in 0..d {
                    let p = (c..d)
                        .max_by(|&a, &b| m[a * d + c].abs().partial_cmp(&m[b * d + c].abs()).unwrap())
                        .unwrap();
                    if m[p * d + c] == T::zero() {
                        return T::zero();
                    }
                    if p != c {
                        for j in 0..d {
                            m.swap(p * d + j, c * d + j);
                        }
                        det = -det;
                    }
                    det *= m[c * d + c];
                    for r in c + 1..d {
                        let f = m[r * d + c] / m[c * d + c];
                        for j in c..d {
                            let v = m[c * d + j];
                            m[r * d + j] -= f * v;
                        }
                    }
                }
                det
            }
        }
    }
}

/// Proper rotation by `theta` about `axis` (right-hand rule).
pub fn rotation_about<T: Real>(axis: [T; 3], theta: T) -> Result<Isometry<T>> {
    let norm = axis.iter().map(|a| *a * *a).sum::<T>().sqrt();
    if norm == T::zero() || !norm.is_finite() {
        return Err(Error::ZeroAxis);
    }
    let n = axis.map(|a| a / norm);
    let (s, c) = theta.sin_cos();
    let one_c = T::one() - c;
    let cross = [[T::zero(), -n[2], n[1]], [n[2], T::zero(), -n[0]], [-n[1], n[0], T::zero()]];
    let mut entries = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { c } else { T::zero() };
            entries.push(id + s * cross[i][j] + one_c * n[i] * n[j]);
        }
    }
    Ok(Isometry { dim: 3, entries, fixed_axis: Some(n.to_vec()) })
}

/// The rotation family fixing (1,1,1) parameterised by λ.
pub fn a_lambda<T: Real>(lambda: T) -> Isometry<T> {
    let l = lambda;
    let one = T::one();
    let den = l * l - l + one;
    let (a, b, c) = (l / den, (one - l) / den, (l * l - l) / den);
    let third = (one / T::of(3.0)).sqrt();
    Isometry {
        dim: 3,
        entries: vec![a, b, c, c, a, b, b, c, a],
        fixed_axis: Some(vec![third; 3]),
    }
}

/// The rotation family fixing (0,1,1) parameterised by λ.
pub fn b_lambda<T: Real>(lambda: T) -> Isometry<T> {
    let l = lambda;
    let one = T::one();
    let den = one + l * l;
    let r = l * T::SQRT_2() / den;
    let (l2, i) = (l * l / den, one / den);
    let half = T::FRAC_1_SQRT_2();
    Isometry {
        dim: 3,
        entries: vec![(l * l - one) / den, r, -r, -r, l2, i, r, i, l2],
        fixed_axis: Some(vec![T::zero(), half, half]),
    }
}

/// Rotation angle θ ∈ [0, π] of [`a_lambda`]:
/// cos θ = ½(3λ/(λ²−λ+1) − 1). The sign of θ is not determined by the
/// trace; callers comparing against [`rotation_about`] try both.
pub fn lambda_to_theta<T: Real>(lambda: T) -> T {
    let den = lambda * lambda - lambda + T::one();
    let c = T::of(0.5) * (T::of(3.0) * lambda / den - T::one());
    c.max(-T::one()).min(T::one()).acos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: &Isometry<f64>, rows: &[[f64; 3]; 3], tol: f64) -> bool {
        (0..3).all(|i| (0..3).all(|j| (a.get(i, j) - rows[i][j]).abs() <= tol))
    }

    #[test]
    fn rotation_identity_and_cycle() {
        let r = rotation_about([0.3, -1.0, 2.0], 0.0).unwrap();
        assert!(close(&r, &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 1e-15));
        let r = rotation_about([1.0, 1.0, 1.0], 2.0 * PI / 3.0).unwrap();
        // e1 -> e2 -> e3 -> e1
        assert!(close(&r, &[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], 1e-15));
        assert_eq!(rotation_about([0.0, 0.0, 0.0], 1.0), Err(Error::ZeroAxis));
    }

    #[test]
    fn rotation_properties() {
        for t in [-2.0f64, 0.1, 1.3, 3.0] {
            let r = rotation_about([1.0, 2.0, -0.5], t).unwrap();
            assert!(r.orthogonality_defect() < 1e-14);
            assert!((r.det() - 1.0).abs() < 1e-14);
            let axis = r.fixed_axis().unwrap().to_vec();
            let img = r.apply(&axis);
            assert!(img.iter().zip(&axis).all(|(a, b)| (a - b).abs() < 1e-14));
        }
    }

    #[test]
    fn a_lambda_special_values() {
        assert!(close(&a_lambda(1.0), &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 0.0));
        assert!(close(&a_lambda(0.0), &[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]], 0.0));
        for l in -5..=5 {
            let a = a_lambda(l as f64);
            assert!(a.orthogonality_defect() < 1e-13);
            let img = a.apply(&[1.0, 1.0, 1.0]);
            assert!(img.iter().all(|v| (v - 1.0).abs() < 1e-13));
        }
    }

    #[test]
    fn b_lambda_special_values() {
        assert!(close(&b_lambda(0.0), &[[-1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]], 0.0));
        for l in [-3.7f64, -0.2, 0.4, 1.0, 8.0] {
            let b = b_lambda(l);
            assert!(b.orthogonality_defect() < 1e-13);
            assert!((b.det() - 1.0).abs() < 1e-13);
            let img = b.apply(&[0.0, 1.0, 1.0]);
            assert!(img[0].abs() < 1e-13 && (img[1] - 1.0).abs() < 1e-13 && (img[2] - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn angle_map() {
        assert_eq!(lambda_to_theta(1.0), 0.0);
        assert!((lambda_to_theta(0.0f64).cos() + 0.5).abs() < 1e-15);
        assert!((lambda_to_theta(1e8f64).cos() + 0.5).abs() < 1e-7);
        assert!((lambda_to_theta(-1e8f64).cos() + 0.5).abs() < 1e-7);
        for l in [-4.0, -0.5, 0.3, 2.5] {
            let tr = (0..3).map(|i| a_lambda(l).get(i, i)).sum::<f64>();
            assert!((1.0 + 2.0 * lambda_to_theta(l).cos() - tr).abs() < 1e-13);
        }
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Isometry::new(vec![vec![1.0, 0.1], vec![0.0, 1.0]], None),
            Err(Error::NotIsometry { .. })
        ));
        assert!(Isometry::new(vec![vec![1.0, 0.0]], None).is_err());
        assert!(Isometry::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], Some(vec![1.0, 1.0])).is_ok());
        assert!(Isometry::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]], Some(vec![1.0, 0.0])).is_err());
        assert_eq!(Isometry::<f64>::permutation(&[1, 2, 0]).unwrap().get(1, 0), 1.0);
        assert!(Isometry::<f64>::permutation(&[1, 1, 0]).is_err());
        let p = Isometry::<f64>::permutation(&[3, 0, 1, 2]).unwrap();
        assert_eq!(p.det(), -1.0);
    }
}
