//! Local polynomial interpolation of sampled data.

/// Index `i` such that `ts[i] <= t < ts[i + 1]`, clamped to valid cells.
pub fn cell_index(ts: &[f64], t: f64) -> usize {
    let n = ts.len();
    debug_assert!(n >= 2);
    ts.partition_point(|&x| x <= t).saturating_sub(1).min(n - 2)
}

/// Cubic Lagrange interpolation through the four samples surrounding `t`
/// (fewer when the series is shorter).
pub fn local_cubic(ts: &[f64], fs: &[f64], t: f64) -> f64 {
    let n = ts.len();
    if n == 1 {
        return fs[0];
    }
    let w = 4.min(n);
    let i = cell_index(ts, t);
    let start = (i + 1).saturating_sub(w / 2).min(n - w);
    let xs = &ts[start..start + w];
    let ys = &fs[start..start + w];
    let mut acc = 0.0;
    for j in 0..w {
        let mut l = 1.0;
        for m in 0..w {
            if m != j {
                l *= (t - xs[m]) / (xs[j] - xs[m]);
            }
        }
        acc += l * ys[j];
    }
    acc
}

/// Cubic Hermite interpolant on `[t0, t1]` with end values and slopes.
pub fn hermite(t0: f64, t1: f64, f0: f64, f1: f64, d0: f64, d1: f64, t: f64) -> f64 {
    let h = t1 - t0;
    let u = (t - t0) / h;
    let u2 = u * u;
    let u3 = u2 * u;
    let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
    let h10 = u3 - 2.0 * u2 + u;
    let h01 = -2.0 * u3 + 3.0 * u2;
    let h11 = u3 - u2;
    h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1
}
