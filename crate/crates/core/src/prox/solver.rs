//! Central-cut / deep-cut ellipsoid method with a certified lower bound.
//!
//! Every cut keeps the true minimizer, so at each objective cut
//! `h* ≥ h(c) − √(gᵀPg)`; the running maximum of these is the lower bound.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

const MAX_DEPTH: f64 = 0.5;

/// Answer of the first-order oracle at an ellipsoid center.
pub(crate) enum Probe<T> {
    /// Center outside the domain; `⟨g, z − c⟩ ≤ −depth` on the domain.
    Cut { g: Vec<T>, depth: T },
    /// Finite objective value with one subgradient.
    Value { value: T, g: Vec<T> },
}

#[derive(Debug, Clone)]
pub(crate) struct Outcome<T> {
    pub best: Vec<T>,
    pub upper: T,
    pub lower: T,
    pub iterations: usize,
}

struct Ellipsoid<T> {
    center: Vec<T>,
    /// Row-major factor `J` of the shape `P = JJᵀ`, `E = {c + Jv : ‖v‖₂ ≤ 1}`.
    factor: Vec<T>,
    dim: usize,
}

impl<T: Scalar> Ellipsoid<T> {
    fn ball(center: Vec<T>, radius: T) -> Self {
        let dim = center.len();
        let mut factor = vec![T::zero(); dim * dim];
        for i in 0..dim {
            factor[i * dim + i] = radius;
        }
        Self { center, factor, dim }
    }

    /// `Jᵀg`; its norm is the half-width `√(gᵀPg)` along `g`.
    fn project(&self, g: &[T]) -> Vec<T> {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.factor[i * self.dim + j] * g[i]).sum())
            .collect()
    }

    /// Keeps `{u ∈ E : ⟨g, u − c⟩ ≤ −α·√(gᵀPg)}`, `0 ≤ α < 1`, given `a = Jᵀg`.
    fn cut(&mut self, a: &[T], width: T, alpha: T) {
        let n = lit::<T>(self.dim as f64);
        let d = self.dim;
        let unit: Vec<T> = a.iter().map(|&v| v / width).collect();
        let b: Vec<T> = (0..d)
            .map(|i| (0..d).map(|j| self.factor[i * d + j] * unit[j]).sum())
            .collect();
        let tau = (T::one() + n * alpha) / (n + T::one());
        for (c, &bi) in self.center.iter_mut().zip(&b) {
            *c = *c - tau * bi;
        }
        if d == 1 {
            self.factor[0] = self.factor[0] * (T::one() - alpha) * T::half();
            return;
        }
        let sigma = T::two() * (T::one() + n * alpha) / ((n + T::one()) * (T::one() + alpha));
        let scale = (n * n * (T::one() - alpha * alpha) / (n * n - T::one())).sqrt();
        let kappa = T::one() - (T::one() - sigma).sqrt();
        for i in 0..d {
            for j in 0..d {
                let k = i * d + j;
                self.factor[k] = scale * (self.factor[k] - kappa * b[i] * unit[j]);
            }
        }
    }
}

/// Minimizes a convex function known to attain its minimum in the
/// Euclidean ball `B(center, radius)`.
///
/// `seed` is an optional feasible point with its objective value. The
/// effective gap target is `max(tol, 16 ulp of the objective)`.
pub(crate) fn ellipsoid<T, F>(
    center: Vec<T>,
    radius: T,
    seed: Option<(Vec<T>, T)>,
    tol: T,
    max_iter: usize,
    mut oracle: F,
) -> Result<Outcome<T>>
where
    T: Scalar,
    F: FnMut(&[T]) -> Probe<T>,
{
    let (mut best, mut upper) = seed.unwrap_or_else(|| (center.clone(), T::infinity()));
    let mut lower = T::neg_infinity();
    let mut e = Ellipsoid::ball(center, radius);
    let done = |upper: T, lower: T| {
        upper.is_finite() && upper - lower <= tol.max(lit::<T>(16.0) * T::epsilon() * (T::one() + upper.abs()))
    };
    for it in 0..max_iter {
        if done(upper, lower) {
            return Ok(Outcome { best, upper, lower, iterations: it });
        }
        let (g, depth, value) = match oracle(&e.center) {
            Probe::Cut { g, depth } => (g, depth, None),
            Probe::Value { value, g } => (g, T::zero(), Some(value)),
        };
        let a = e.project(&g);
        let width = a.iter().map(|&v| v * v).sum::<T>().sqrt();
        if let Some(v) = value {
            if v < upper {
                upper = v;
                best = e.center.clone();
            }
        }
        if width == T::zero() && value.is_some() {
            // zero subgradient: the center is a minimizer
            lower = upper;
            continue;
        }
        if !(width > T::zero()) || !width.is_finite() {
            return Err(Error::Internal(format!("degenerate ellipsoid at iteration {it}")));
        }
        let alpha = match value {
            Some(v) => {
                lower = lower.max(v - width);
                (v - upper) / width
            }
            None => {
                let a = depth / width;
                if a >= T::one() {
                    return Err(Error::Infeasible);
                }
                a
            }
        };
        if alpha >= T::one() {
            continue;
        }
        // a shallower cut keeps a superset and avoids near-singular updates
        e.cut(&a, width, alpha.max(T::zero()).min(lit(MAX_DEPTH)));
    }
    let gap = (upper - lower).max(T::zero());
    if done(upper, lower) {
        return Ok(Outcome { best, upper, lower, iterations: max_iter });
    }
    Err(Error::Budget {
        iterations: max_iter,
        best: best.iter().map(|v| v.to_f64_lossy()).collect(),
        gap: gap.to_f64_lossy(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimizes_a_shifted_quadratic() {
        let target = [0.3, -0.7, 0.1];
        let out = ellipsoid(vec![0.0; 3], 2.0, None, 1e-10, 100_000, |u: &[f64]| {
            let d: Vec<f64> = u.iter().zip(&target).map(|(a, b)| a - b).collect();
            Probe::Value {
                value: d.iter().map(|v| v * v).sum::<f64>(),
                g: d.iter().map(|v| 2.0 * v).collect(),
            }
        })
        .unwrap();
        assert!(out.upper - out.lower <= 1e-10);
        assert!(out.lower <= 0.0 + 1e-12);
        for (a, b) in out.best.iter().zip(&target) {
            assert!((a - b).abs() < 1e-4);
        }
    }

    #[test]
    fn nonsmooth_one_dimensional() {
        let out = ellipsoid(vec![0.0], 4.0, None, 1e-12, 10_000, |u: &[f64]| Probe::Value {
            value: (u[0] - 1.25).abs(),
            g: vec![(u[0] - 1.25).signum()],
        })
        .unwrap();
        assert!((out.best[0] - 1.25).abs() < 1e-11);
    }

    #[test]
    fn respects_feasibility_cuts() {
        // minimize u₀ + u₁ over u₀ ≥ 1, u₁ ≥ 2
        let out = ellipsoid(vec![0.0, 0.0], 10.0, None, 1e-9, 100_000, |u: &[f64]| {
            if u[0] < 1.0 {
                Probe::Cut { g: vec![-1.0, 0.0], depth: 1.0 - u[0] }
            } else if u[1] < 2.0 {
                Probe::Cut { g: vec![0.0, -1.0], depth: 2.0 - u[1] }
            } else {
                Probe::Value { value: u[0] + u[1], g: vec![1.0, 1.0] }
            }
        })
        .unwrap();
        assert!(out.upper - 3.0 <= 1e-9 && out.lower <= 3.0);
    }

    #[test]
    fn budget_error_carries_best_iterate() {
        let err = ellipsoid(vec![0.0, 0.0], 1.0, None, 1e-14, 3, |u: &[f64]| Probe::Value {
            value: u[0] * u[0] + u[1],
            g: vec![2.0 * u[0], 1.0],
        })
        .unwrap_err();
        match err {
            Error::Budget { iterations, best, .. } => {
                assert_eq!(iterations, 3);
                assert_eq!(best.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }
}
