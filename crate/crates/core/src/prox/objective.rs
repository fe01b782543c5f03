use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::spaces::{ConvexSet, NormedSpace};
use crate::vector::{check_dim, dot};

/// Membership tolerance used when evaluating indicators.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Stock proper convex lsc objectives with evaluation, a subgradient oracle
/// and a domain-point oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConvexFunction<T> {
    Zero,
    /// `½⟨Qy, y⟩ + ⟨b, y⟩` with `Q` symmetric positive semidefinite.
    Quadratic { q: Vec<Vec<T>>, b: Vec<T> },
    /// Indicator of a closed convex set (`0` on the set, `+∞` off it).
    Indicator { set: ConvexSet<T> },
    /// `weight·‖y‖₁`.
    L1 { weight: T },
    /// `max_i ⟨a_i, y⟩ + c_i`.
    MaxAffine { slopes: Vec<Vec<T>>, offsets: Vec<T> },
}

impl<T: Scalar> ConvexFunction<T> {
    pub fn quadratic(q: Vec<Vec<T>>, b: Vec<T>) -> Self {
        ConvexFunction::Quadratic { q, b }
    }

    /// `‖y‖²/2`.
    pub fn half_square(n: usize) -> Self {
        let q = (0..n)
            .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
            .collect();
        ConvexFunction::Quadratic { q, b: vec![T::zero(); n] }
    }

    pub fn indicator(set: ConvexSet<T>) -> Self {
        ConvexFunction::Indicator { set }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ConvexFunction::Zero => "zero",
            ConvexFunction::Quadratic { .. } => "quadratic",
            ConvexFunction::Indicator { set } => match set {
                ConvexSet::Ball { .. } => "ball_indicator",
                ConvexSet::Box { .. } => "box_indicator",
                ConvexSet::Halfspace { .. } => "halfspace_indicator",
                ConvexSet::Affine { .. } => "affine_indicator",
            },
            ConvexFunction::L1 { .. } => "l1",
            ConvexFunction::MaxAffine { .. } => "max_affine",
        }
    }

    pub fn set(&self) -> Option<&ConvexSet<T>> {
        match self {
            ConvexFunction::Indicator { set } => Some(set),
            _ => None,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            ConvexFunction::Zero => Ok(()),
            ConvexFunction::Quadratic { q, b } => {
                check_dim(b, n)?;
                check_dim(q, n)?;
                for row in q {
                    check_dim(row, n)?;
                }
                for i in 0..n {
                    for j in 0..i {
                        let scale = q[i][j].abs().max(q[j][i].abs()).max(T::one());
                        if (q[i][j] - q[j][i]).abs() > lit::<T>(1e-12) * scale {
                            return Err(Error::input(format!("Q is not symmetric at ({i}, {j})")));
                        }
                    }
                }
                if !is_psd(q) {
                    return Err(Error::input("Q is not positive semidefinite"));
                }
                Ok(())
            }
            ConvexFunction::Indicator { set } => set.validate(n),
            ConvexFunction::L1 { weight } => {
                if *weight >= T::zero() && weight.is_finite() {
                    Ok(())
                } else {
                    Err(Error::input("l1 weight must be finite and >= 0"))
                }
            }
            ConvexFunction::MaxAffine { slopes, offsets } => {
                if slopes.is_empty() {
                    return Err(Error::input("max_affine needs at least one piece"));
                }
                check_dim(offsets, slopes.len())?;
                for a in slopes {
                    check_dim(a, n)?;
                }
                Ok(())
            }
        }
    }

    /// `f(y)`, `+∞` off the domain.
    pub fn value(&self, space: &NormedSpace<T>, y: &[T]) -> T {
        match self {
            ConvexFunction::Zero => T::zero(),
            ConvexFunction::Quadratic { q, b } => {
                let qy: Vec<T> = q.iter().map(|row| dot(row, y)).collect();
                T::half() * dot(&qy, y) + dot(b, y)
            }
            ConvexFunction::Indicator { set } => {
                if set.contains(space, y, lit(MEMBERSHIP_TOL)) {
                    T::zero()
                } else {
                    T::infinity()
                }
            }
            ConvexFunction::L1 { weight } => *weight * y.iter().map(|v| v.abs()).sum::<T>(),
            ConvexFunction::MaxAffine { slopes, offsets } => slopes
                .iter()
                .zip(offsets)
                .map(|(a, &c)| dot(a, y) + c)
                .fold(T::neg_infinity(), T::max),
        }
    }

    /// One subgradient at a point of finiteness, `None` off the domain.
    pub fn subgradient(&self, space: &NormedSpace<T>, y: &[T]) -> Option<Vec<T>> {
        match self {
            ConvexFunction::Zero => Some(vec![T::zero(); y.len()]),
            ConvexFunction::Quadratic { q, b } => {
                Some(q.iter().zip(b).map(|(row, &bi)| dot(row, y) + bi).collect())
            }
            ConvexFunction::Indicator { set } => set
                .contains(space, y, lit(MEMBERSHIP_TOL))
                .then(|| vec![T::zero(); y.len()]),
            ConvexFunction::L1 { weight } => Some(
                y.iter()
                    .map(|&v| {
                        if v > T::zero() {
                            *weight
                        } else if v < T::zero() {
                            -*weight
                        } else {
                            T::zero()
                        }
                    })
                    .collect(),
            ),
            ConvexFunction::MaxAffine { slopes, offsets } => {
                let mut best = 0;
                let mut top = T::neg_infinity();
                for (i, (a, &c)) in slopes.iter().zip(offsets).enumerate() {
                    let v = dot(a, y) + c;
                    if v > top {
                        top = v;
                        best = i;
                    }
                }
                Some(slopes[best].clone())
            }
        }
    }

    /// A domain point within `radius` of `target`, with an upper bound on
    /// `f` there.
    pub fn domain_point(&self, space: &NormedSpace<T>, target: &[T], radius: T) -> Option<(Vec<T>, T)> {
        let z = match self {
            ConvexFunction::Indicator { set } => set
                .project_closed_form(space, target)
                .unwrap_or_else(|| set.project_euclidean(target)),
            _ => target.to_vec(),
        };
        let v = self.value(space, &z);
        (v.is_finite() && space.distance(&z, target) <= radius).then_some((z, v))
    }

    /// Deep feasibility cut at `y` for indicators: `(g, depth)` with
    /// `⟨g, z − y⟩ ≤ −depth` on the domain.
    pub(crate) fn feasibility_cut(&self, space: &NormedSpace<T>, y: &[T]) -> Option<(Vec<T>, T)> {
        self.set().and_then(|s| s.separate(space, y))
    }
}

/// Cholesky of `Q + τI` with a tiny relative shift.
fn is_psd<T: Scalar>(q: &[Vec<T>]) -> bool {
    let n = q.len();
    let scale = q.iter().flatten().fold(T::one(), |m, v| m.max(v.abs()));
    let shift = lit::<T>(1e-12) * scale * lit(n as f64);
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = q[i][j] + if i == j { shift } else { T::zero() };
            for k in 0..j {
                s = s - l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return false;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}
