//! Small dense-vector helpers. Dimensions here are tiny (≤ 16 by default),
//! so plain slices beat pulling in a linear-algebra crate.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub fn check_dim<T>(x: &[T], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    Ok(())
}

#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[inline]
pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

#[inline]
pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

#[inline]
pub fn scale<T: Scalar>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

#[inline]
pub fn midpoint<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| (x + y) * T::half()).collect()
}

#[inline]
pub fn norm2<T: Scalar>(a: &[T]) -> T {
    lp_norm(a, T::two())
}

/// `(Σ|a_i|^p)^{1/p}`, scaled by the max entry to avoid overflow.
pub fn lp_norm<T: Scalar>(a: &[T], p: T) -> T {
    let m = a.iter().fold(T::zero(), |acc, &x| acc.max(x.abs()));
    if m == T::zero() {
        return T::zero();
    }
    if p.is_infinite() {
        return m;
    }
    let s: T = a.iter().map(|&x| (x.abs() / m).powf(p)).sum();
    m * s.powf(p.recip())
}

pub fn is_zero<T: Scalar>(a: &[T]) -> bool {
    a.iter().all(|&x| x == T::zero())
}

/// Orthonormalizes `vectors` (modified Gram-Schmidt), dropping dependent ones.
pub fn orthonormalize<T: Scalar>(vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for e in &out {
            let c = dot(&w, e);
            for (wi, &ei) in w.iter_mut().zip(e) {
                *wi = *wi - c * ei;
            }
        }
        let n = norm2(&w);
        let vn = norm2(v);
        if n > T::lit(1e-12) * vn.max(T::one()) {
            out.push(scale(&w, n.recip()));
        }
    }
    out
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve_linear<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Result<Vec<T>> {
    let n = b.len();
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() <= T::lit(1e-300) {
            return Err(Error::Internal("singular linear system".into()));
        }
        m.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..=n {
                let v = m[col][k];
                m[row][k] = m[row][k] - f * v;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = m[i][n];
        for k in i + 1..n {
            s = s - m[i][k] * x[k];
        }
        x[i] = s / m[i][i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lp_norm_matches_direct_sum() {
        assert_eq!(lp_norm(&[3.0_f64, 4.0], 2.0), 5.0);
        assert!((lp_norm(&[1.0_f64, 1.0], 4.0) - 2f64.powf(0.25)).abs() < 1e-15);
        assert_eq!(lp_norm(&[0.0_f64; 3], 3.0), 0.0);
    }

    #[test]
    fn gaussian_elimination_solves_small_system() {
        let a = vec![vec![2.0_f64, 1.0], vec![1.0, 3.0]];
        let x = solve_linear(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn orthonormalize_drops_dependent_vectors() {
        let e = orthonormalize(&[vec![1.0_f64, 1.0, 0.0], vec![2.0, 2.0, 0.0], vec![0.0, 1.0, 0.0]]);
        assert_eq!(e.len(), 2);
        assert!(dot(&e[0], &e[1]).abs() < 1e-14);
    }
}
