//! Brute-force grid minimization for small dimensions.

/// Coarse-to-fine grid search for the minimizer of `h` over the cube
/// `center + [−half_width, half_width]^n`.
///
/// The first grid has 65 points per axis; each refinement recenters on the
/// best point with a quarter of the step and ±8 steps per axis, until the
/// step is below `resolution / 16`. Returns the best point and its value.
pub fn grid_argmin<H: Fn(&[f64]) -> f64>(h: H, center: &[f64], half_width: f64, resolution: f64) -> (Vec<f64>, f64) {
    let n = center.len();
    let mut best = center.to_vec();
    let mut best_value = h(center);
    let mut step = half_width / 32.0;
    let mut reach = 32_i64;
    let mut origin = center.to_vec();
    loop {
        let width = (2 * reach + 1) as usize;
        let total = width.pow(n as u32);
        let mut point = vec![0.0; n];
        for idx in 0..total {
            let mut rest = idx;
            for (i, p) in point.iter_mut().enumerate() {
                let k = (rest % width) as i64 - reach;
                rest /= width;
                *p = origin[i] + step * k as f64;
            }
            let v = h(&point);
            if v < best_value {
                best_value = v;
                best.copy_from_slice(&point);
            }
        }
        if step <= resolution / 16.0 {
            return (best, best_value);
        }
        origin.copy_from_slice(&best);
        step /= 4.0;
        reach = 8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_kinked_minimizer() {
        let h = |y: &[f64]| (y[0] - 0.3137).abs() + 2.0 * (y[1] + 0.71).abs();
        let (g, v) = grid_argmin(h, &[0.0, 0.0], 2.0, 1e-4);
        assert!((g[0] - 0.3137).abs() < 1e-4 && (g[1] + 0.71).abs() < 1e-4, "{g:?}");
        assert!(v < 3e-4);
    }

    #[test]
    fn respects_an_infinite_barrier() {
        let h = |y: &[f64]| if y[0] + y[1] <= 1.0 { (y[0] - 2.0).powi(2) + (y[1] - 2.0).powi(2) } else { f64::INFINITY };
        let (g, _) = grid_argmin(h, &[0.0, 0.0], 3.0, 1e-4);
        assert!((g[0] - 0.5).abs() < 1e-3 && (g[1] - 0.5).abs() < 1e-3, "{g:?}");
    }
}
