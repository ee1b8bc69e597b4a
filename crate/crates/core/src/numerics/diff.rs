//! Finite-difference derivatives on arbitrary (strictly increasing) grids.

use crate::error::{Error, Result};

/// Stencil width used by [`derivative`].
pub const STENCIL: usize = 5;

/// Fornberg weights for the first derivative at `x0` from samples at `xs`.
pub fn first_derivative_weights(x0: f64, xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![[0.0f64; 2]; n];
    if n == 0 {
        return Vec::new();
    }
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(1);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|w| w[1]).collect()
}

/// Derivative of sampled data: centred five-point stencils on interior
/// points, one-sided five-point stencils at the two points nearest each end.
/// Grids shorter than five points use every sample.
pub fn derivative(ts: &[f64], fs: &[f64]) -> Result<Vec<f64>> {
    let n = ts.len();
    if n < 2 || fs.len() != n {
        return Err(Error::GridTooCoarse(format!(
            "need at least 2 matching samples, got {} times and {} values",
            n,
            fs.len()
        )));
    }
    check_increasing(ts)?;
    let w = STENCIL.min(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let start = i.saturating_sub(w / 2).min(n - w);
        let nodes = &ts[start..start + w];
        let weights = first_derivative_weights(ts[i], nodes);
        out.push(weights.iter().zip(&fs[start..start + w]).map(|(a, b)| a * b).sum());
    }
    Ok(out)
}

pub(crate) fn check_increasing(ts: &[f64]) -> Result<()> {
    if let Some(w) = ts.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::GridTooCoarse(format!(
            "time grid must be strictly increasing ({} followed by {})",
            w[0], w[1]
        )));
    }
    Ok(())
}
