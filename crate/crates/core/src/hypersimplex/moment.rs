//! The standard moment map of `G_{n,2}` on Gaussian-rational frames.

use num_complex::Complex;
use num_traits::Zero;

use super::Point;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Complex number with exact rational real and imaginary parts.
pub type Gaussian = Complex<Rational>;

/// `μ(L)` for the plane spanned by the two rows of `a`:
/// `μ_k = Σ_{J ∋ k} |P^J|² / Σ_I |P^I|²` over the Plücker coordinates
/// `P^{ij} = a_{1i} a_{2j} − a_{1j} a_{2i}`.
pub fn moment_map(a: &[Vec<Gaussian>]) -> Result<Point> {
    let [r1, r2] = a else {
        return Err(Error::Range(format!("expected 2 rows, got {}", a.len())));
    };
    let n = r1.len();
    if r2.len() != n {
        return Err(Error::Range("rows have different lengths".into()));
    }
    let mut mu = vec![Rational::zero(); n];
    let mut total = Rational::zero();
    for i in 0..n {
        for j in i + 1..n {
            let p = &r1[i] * &r2[j] - &r1[j] * &r2[i];
            let w = p.norm_sqr();
            if w.is_zero() {
                continue;
            }
            mu[i] += &w;
            mu[j] += &w;
            total += w;
        }
    }
    if total.is_zero() {
        return Err(Error::Rank);
    }
    Ok(Point::new(mu.into_iter().map(|m| m / &total).collect()))
}

/// `(λ1 − λ2) ξ + (λ2, …, λ2)`.
pub fn scaled_moment(xi: &Point, lambda1: &Rational, lambda2: &Rational) -> Vec<Rational> {
    let d = lambda1 - lambda2;
    xi.coords().iter().map(|x| &d * x + lambda2).collect()
}
