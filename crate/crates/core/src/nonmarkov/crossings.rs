//! Sign changes of the Ohmic-like dephasing rate.
//!
//! `γ(t, s) ∝ sin(s θ)` with `θ = arctan(ω_c t) ∈ [0, π/2)`, so the zeros
//! sit at `θ_k = kπ/s`, i.e. `t_k = tan(kπ/s)/ω_c` for `kπ/s < π/2`. The
//! rate also decays to zero as `t → ∞`, which closes the last window.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::dynamics::OhmicParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Crossing {
    At(f64),
    AtInfinity,
}

impl Crossing {
    pub fn time(self) -> f64 {
        match self {
            Crossing::At(t) => t,
            Crossing::AtInfinity => f64::INFINITY,
        }
    }
}

/// `t_0 = 0, t_1, …` followed by the [`Crossing::AtInfinity`] marker.
pub fn gamma_zero_crossings(p: OhmicParams) -> Vec<Crossing> {
    let mut out = vec![Crossing::At(0.0)];
    if p.s > 0.0 {
        let mut k = 1;
        loop {
            let theta = k as f64 * PI / p.s;
            if theta >= FRAC_PI_2 {
                break;
            }
            out.push(Crossing::At(theta.tan() / p.omega_c));
            k += 1;
        }
    }
    out.push(Crossing::AtInfinity);
    out
}

/// Windows `(t_{2k−1}, t_{2k})` on which `γ < 0`; the right end may be
/// `+∞`. Empty for `s ≤ 2`.
pub fn negative_rate_windows(p: OhmicParams) -> Vec<(f64, f64)> {
    let ts: Vec<f64> = gamma_zero_crossings(p).into_iter().map(Crossing::time).collect();
    ts.iter()
        .enumerate()
        .skip(1)
        .step_by(2)
        .filter(|(_, t)| t.is_finite())
        .map(|(i, &t)| (t, ts[i + 1]))
        .collect()
}
