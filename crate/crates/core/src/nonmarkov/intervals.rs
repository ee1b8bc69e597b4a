//! Where does a sampled series run against its expected monotone trend?

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::diff::{derivative, first_derivative_weights};
use crate::numerics::interp::local_cubic;
use crate::numerics::roots::bisect;

/// Relative deadband applied to `|Ḟ|` by default (times `max|F|`).
pub const DEFAULT_EPS_REL: f64 = 1e-9;

/// Expected direction of a monotone functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    Increasing,
    Decreasing,
}

impl Alpha {
    pub fn from_sign(x: f64) -> Option<Alpha> {
        if x > 0.0 {
            Some(Alpha::Increasing)
        } else if x < 0.0 {
            Some(Alpha::Decreasing)
        } else {
            None
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Alpha::Increasing => 1.0,
            Alpha::Decreasing => -1.0,
        }
    }

    pub fn flipped(self) -> Alpha {
        match self {
            Alpha::Increasing => Alpha::Decreasing,
            Alpha::Decreasing => Alpha::Increasing,
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.sign() as i8)
    }
}

/// Sorted, disjoint `(t_i, t_f)` pairs with `t_i < t_f`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
#[serde(transparent)]
pub struct SignIntervals(Vec<(f64, f64)>);

impl SignIntervals {
    pub fn new(pairs: Vec<(f64, f64)>) -> Result<Self> {
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if !(a < b) {
                return Err(Error::param("intervals", format!("pair {k} has t_i = {a} ≥ t_f = {b}")));
            }
            if k > 0 && !(pairs[k - 1].1 <= a) {
                return Err(Error::param("intervals", format!("pair {k} overlaps or is out of order")));
            }
        }
        Ok(SignIntervals(pairs))
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn three_point_derivative(ts: &[f64], fs: &[f64]) -> Vec<f64> {
    let n = ts.len();
    (0..n)
        .map(|i| {
            let start = i.saturating_sub(1).min(n - 3);
            let w = first_derivative_weights(ts[i], &ts[start..start + 3]);
            w.iter().zip(&fs[start..start + 3]).map(|(a, b)| a * b).sum()
        })
        .collect()
}

/// Intervals on which the sampled derivative of `fs` has sign `−α`.
///
/// A sample counts as violating when `−α Ḟ` exceeds both `eps_flow` and the
/// local finite-difference error estimate (difference between the five- and
/// three-point derivatives), so stencil chatter near touching zeros of a
/// monotone series is not reported. Endpoints are the zeros of the
/// interpolated derivative, located by bisection; runs whose refined
/// endpoints meet are merged, and intervals narrower than `min_width` are
/// dropped.
pub fn detect_intervals(ts: &[f64], fs: &[f64], alpha: Alpha, eps_flow: f64, min_width: f64) -> Result<SignIntervals> {
    let n = ts.len();
    if n < 3 || fs.len() != n {
        return Err(Error::GridTooCoarse(format!("need at least 3 matching samples, got {n} times and {} values", fs.len())));
    }
    if !(eps_flow > 0.0) {
        return Err(Error::param("eps_flow", format!("must be > 0, got {eps_flow}")));
    }
    if !(min_width >= 0.0) {
        return Err(Error::param("min_width", format!("must be ≥ 0, got {min_width}")));
    }
    let d5 = derivative(ts, fs)?;
    let d3 = three_point_derivative(ts, fs);
    let a = alpha.sign();
    let violating: Vec<bool> = (0..n).map(|i| -a * d5[i] > eps_flow.max((d5[i] - d3[i]).abs())).collect();
    let g = |t: f64| -a * local_cubic(ts, &d5, t);
    let x_tol = 1e-13 * (ts[n - 1] - ts[0]).abs().max(1.0);

    let mut raw: Vec<(f64, f64)> = Vec::new();
    let mut i = 0;
    while i < n {
        if !violating[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < n && violating[i] {
            i += 1;
        }
        let end = i - 1;
        let mut left = ts[0];
        let mut j = start;
        while j > 0 {
            if g(ts[j - 1]) <= 0.0 {
                left = bisect(g, ts[j - 1], ts[j], x_tol).unwrap_or(ts[j - 1]);
                break;
            }
            j -= 1;
        }
        let mut right = ts[n - 1];
        let mut j = end;
        while j + 1 < n {
            if g(ts[j + 1]) <= 0.0 {
                right = bisect(g, ts[j], ts[j + 1], x_tol).unwrap_or(ts[j + 1]);
                break;
            }
            j += 1;
        }
        match raw.last_mut() {
            Some(last) if left <= last.1 => last.1 = last.1.max(right),
            _ => raw.push((left, right)),
        }
    }
    raw.retain(|&(l, r)| r - l > min_width && r > l);
    SignIntervals::new(raw)
}

/// `Σ_k |F(t_f^k) − F(t_i^k)|` with endpoint values from local cubic
/// interpolation of the samples.
pub fn measure_from_intervals(ts: &[f64], fs: &[f64], intervals: &SignIntervals) -> f64 {
    intervals
        .pairs()
        .iter()
        .map(|&(a, b)| (local_cubic(ts, fs, b) - local_cubic(ts, fs, a)).abs())
        .fold(0.0, |acc, v| acc + v)
}

/// Default absolute deadband `DEFAULT_EPS_REL · max|F|` (floored at the
/// smallest positive normal number so a constant-zero series is accepted).
pub fn default_eps_flow(fs: &[f64]) -> f64 {
    let m = fs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (DEFAULT_EPS_REL * m).max(f64::MIN_POSITIVE)
}
