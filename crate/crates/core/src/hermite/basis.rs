//! Evaluation of the L²-normalised Hermite functions φ_n.

use crate::scalar::Real;

/// Values φ_0(x), …, φ_{n_max}(x).
///
/// The three-term recurrence is run on the polynomial part with periodic
/// rescaling so that neither the Gaussian factor nor the polynomial growth
/// over- or underflows before they are recombined.
pub fn hermite_all<T: Real>(n_max: usize, x: T) -> Vec<T> {
    let mut out = Vec::with_capacity(n_max + 1);
    let (mut log_scale, half) = (T::zero(), T::of(0.5));
    let limit = T::max_value().sqrt();
    let gauss = |log_scale: T| (log_scale - half * x * x).exp();

    let mut prev = T::zero();
    let mut cur = (T::FRAC_2_SQRT_PI() / T::of(2.0)).sqrt(); // π^{-1/4}
    out.push(cur * gauss(log_scale));
    for n in 0..n_max {
        let nf = T::idx(n);
        let next = x * (T::of(2.0) / (nf + T::one())).sqrt() * cur
            - (nf / (nf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > limit {
            prev /= limit;
            cur /= limit;
            log_scale += limit.ln();
        }
        out.push(cur * gauss(log_scale));
    }
    out
}

/// φ_n(x).
pub fn hermite_eval<T: Real>(n: usize, x: T) -> T {
    hermite_all(n, x)[n]
}

/// Natural log of Σ_{n<count} p_n(y)², where p_n = φ_n·e^{y²/2} are the
/// orthonormal polynomials for the weight e^{-y²}, together with the ratio
/// used by Newton's method: (p_count(y), p_count'(y)).
pub(crate) fn christoffel<T: Real>(count: usize, y: T) -> (T, T, T) {
    let limit = T::max_value().sqrt();
    let two = T::of(2.0);
    let mut log_scale = T::zero();
    let mut prev = T::zero();
    let mut cur = (T::FRAC_2_SQRT_PI() / T::of(2.0)).sqrt();
    let mut sum = T::zero();
    for n in 0..count {
        sum += cur * cur;
        let nf = T::idx(n);
        let next = y * (two / (nf + T::one())).sqrt() * cur - (nf / (nf + T::one())).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > limit {
            prev /= limit;
            cur /= limit;
            sum /= limit * limit;
            log_scale += two * limit.ln();
        }
    }
    // p_Q' = √(2Q) p_{Q-1}
    let deriv = (two * T::idx(count)).sqrt() * prev;
    (sum.ln() + log_scale, cur, deriv)
}
