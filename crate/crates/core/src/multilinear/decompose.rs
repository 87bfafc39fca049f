//! Splitting an isometry into coordinate pairs and a residual block.

use crate::error::Result;
use crate::multilinear::isometry::Isometry;
use crate::scalar::Real;

/// Pair-detection tolerance on |⟨Ae_i, e_j⟩ ∓ 1|.
pub const PAIR_TOL: f64 = 1e-12;

/// Result of [`decompose_isometry`].
///
/// `sigma1` lists domain indices (paired first, in the order of
/// `good_pairs` then `bad_pairs`, then the rest) and `sigma2` the matching
/// range indices; `residual[r][c] = A[sigma2[p+r]][sigma1[p+c]]` with p the
/// number of pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    /// (i, j) with A e_i = e_j.
    pub good_pairs: Vec<(usize, usize)>,
    /// (i, j) with A e_i = −e_j.
    pub bad_pairs: Vec<(usize, usize)>,
    pub residual: Vec<Vec<T>>,
    pub sigma1: Vec<usize>,
    pub sigma2: Vec<usize>,
}

pub fn decompose_isometry<T: Real>(a: &Isometry<T>) -> Result<Decomposition<T>> {
    let d = a.dim();
    let tol = T::of(PAIR_TOL);
    let mut used_i = vec![false; d];
    let mut used_j = vec![false; d];
    let (mut good, mut bad) = (Vec::new(), Vec::new());
    for i in 0..d {
        for j in 0..d {
            if used_j[j] {
                continue;
            }
            let v = a.get(j, i);
            if (v - T::one()).abs() < tol {
                good.push((i, j));
            } else if (v + T::one()).abs() < tol {
                bad.push((i, j));
            } else {
                continue;
            }
            used_i[i] = true;
            used_j[j] = true;
            break;
        }
    }
    let mut sigma1: Vec<usize> = good.iter().chain(&bad).map(|p| p.0).collect();
    let mut sigma2: Vec<usize> = good.iter().chain(&bad).map(|p| p.1).collect();
    sigma1.extend((0..d).filter(|&i| !used_i[i]));
    sigma2.extend((0..d).filter(|&j| !used_j[j]));
    let p = good.len() + bad.len();
    let residual = (p..d).map(|r| (p..d).map(|c| a.get(sigma2[r], sigma1[c])).collect()).collect();
    Ok(Decomposition { good_pairs: good, bad_pairs: bad, residual, sigma1, sigma2 })
}

impl<T: Real> Decomposition<T> {
    /// Reassembles the full matrix.
    pub fn reconstruct(&self) -> Vec<Vec<T>> {
        let d = self.sigma1.len();
        let mut m = vec![vec![T::zero(); d]; d];
        for &(i, j) in &self.good_pairs {
            m[j][i] = T::one();
        }
        for &(i, j) in &self.bad_pairs {
            m[j][i] = -T::one();
        }
        let p = self.good_pairs.len() + self.bad_pairs.len();
        for (r, row) in self.residual.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m[self.sigma2[p + r]][self.sigma1[p + c]] = v;
            }
        }
        m
    }

    /// True if no entry of the residual block is ±1.
    pub fn residual_has_no_pairs(&self) -> bool {
        let tol = T::of(PAIR_TOL);
        self.residual.iter().flatten().all(|&v| (v.abs() - T::one()).abs() >= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::isometry::rotation_about;

    #[test]
    fn identity_and_negation() {
        let d = decompose_isometry(&Isometry::<f64>::identity(3)).unwrap();
        assert_eq!(d.good_pairs, vec![(0, 0), (1, 1), (2, 2)]);
        assert!(d.residual.is_empty());
        let neg = Isometry::<f64>::signs(&[true, true, true]);
        let d = decompose_isometry(&neg).unwrap();
        assert_eq!(d.bad_pairs.len(), 3);
        assert!(d.good_pairs.is_empty() && d.residual.is_empty());
    }

    #[test]
    fn generic_rotation_has_no_pairs() {
        let r = rotation_about([1.0, 1.0, 1.0], 0.7).unwrap();
        let d = decompose_isometry(&r).unwrap();
        assert!(d.good_pairs.is_empty() && d.bad_pairs.is_empty());
        assert_eq!(d.residual, r.rows());
        assert!(d.residual_has_no_pairs());
    }

    #[test]
    fn mixed_block() {
        // e_2 -> -e_0, rotation in the (e_0, e_1) -> (e_1, e_2) plane.
        let (c, s) = (0.6, 0.8);
        let a = Isometry::new(vec![vec![0.0, 0.0, -1.0], vec![c, -s, 0.0], vec![s, c, 0.0]], None).unwrap();
        let d = decompose_isometry(&a).unwrap();
        assert_eq!(d.bad_pairs, vec![(2, 0)]);
        assert_eq!(d.residual, vec![vec![c, -s], vec![s, c]]);
        assert_eq!(d.reconstruct(), a.rows());
    }
}
