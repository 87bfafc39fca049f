//! Gauss–Hermite rules for the weight e^{-y²}.

use crate::error::{Error, Result};
use crate::hermite::basis::christoffel;
use crate::scalar::Real;

/// A Q-point Gauss–Hermite rule.
///
/// `comp_weights[q] = weights[q]·e^{y_q²}` is computed directly rather than
/// by multiplying, so it stays accurate where the raw weight underflows.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub comp_weights: Vec<T>,
}

impl<T: Real> GaussHermite<T> {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::RuleConstruction("rule needs at least one node".into()));
        }
        // Golub–Welsch: eigenvalues of the Jacobi matrix.
        let mut diag = vec![T::zero(); q];
        let mut off: Vec<T> = (1..q).map(|i| (T::idx(i) / T::of(2.0)).sqrt()).collect();
        off.push(T::zero());
        tridiagonal_eigenvalues(&mut diag, &mut off)?;
        diag.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

        let mut nodes = diag;
        for y in nodes.iter_mut() {
            *y = polish(q, *y);
        }
        // Exact evenness.
        for i in 0..q / 2 {
            let a = T::of(0.5) * (nodes[q - 1 - i] - nodes[i]);
            nodes[i] = -a;
            nodes[q - 1 - i] = a;
        }
        if q % 2 == 1 {
            nodes[q / 2] = T::zero();
        }

        let mut weights = Vec::with_capacity(q);
        let mut comp_weights = Vec::with_capacity(q);
        for &y in &nodes {
            let (log_sum, _, _) = christoffel(q, y);
            weights.push((-log_sum).exp());
            comp_weights.push((y * y - log_sum).exp());
        }
        for v in [&mut weights, &mut comp_weights] {
            for i in 0..q / 2 {
                let m = T::of(0.5) * (v[i] + v[q - 1 - i]);
                v[i] = m;
                v[q - 1 - i] = m;
            }
        }
        if nodes.iter().chain(&weights).chain(&comp_weights).any(|v| !v.is_finite()) {
            return Err(Error::RuleConstruction(format!("non-finite node or weight for Q = {q}")));
        }
        Ok(Self { nodes, weights, comp_weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Nodes and raw weights of the Q-point rule, nodes ascending.
pub fn gauss_hermite_rule<T: Real>(q: usize) -> Result<(Vec<T>, Vec<T>)> {
    let rule = GaussHermite::new(q)?;
    Ok((rule.nodes, rule.weights))
}

fn polish<T: Real>(q: usize, mut y: T) -> T {
    for _ in 0..8 {
        let (_, p, dp) = christoffel(q, y);
        if dp == T::zero() {
            break;
        }
        let step = p / dp;
        y -= step;
        if step.abs() <= T::epsilon() * y.abs().max(T::one()) {
            break;
        }
    }
    y
}

/// Implicit QL iteration on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal and is overwritten with the eigenvalues; `e` holds
/// the off-diagonal in `e[0..n-1]` (with `e[n-1]` ignored) and is destroyed.
fn tridiagonal_eigenvalues<T: Real>(d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = T::zero();
    let two = T::of(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::RuleConstruction("QL iteration did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] -= p;
                    e[m] = T::zero();
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}
