//! Closed-form measures for the Ohmic dephasing channel.
//!
//! With transverse attenuation `D(t)` and a pure initial state with
//! `z₀ = z`, the heat gained over a window where `D` rises from `D_i` to
//! `D_f` is `(ω₀ z/2) ln[1 + (D_f² − D_i²)(1 − z²)/(D_i²(1 − z²) + z²)]`.
//! The optimal `z` is of order `D_i`, which underflows `f64` for strong
//! dephasing, so the maximisation runs in `u = ln z` with `ln D` inputs.

use rayon::prelude::*;
use serde::Serialize;

use super::crossings::negative_rate_windows;
use crate::dynamics::{integrated_rate, OhmicParams};
use crate::error::{Error, Result};
use crate::numerics::golden::scan_then_golden;
use crate::table::Table;

/// Column order of [`sweep_table`].
pub const SWEEP_HEADER: [&str; 4] = ["s", "N_Q", "N_C", "z_max"];

const N_SCAN: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NqResult {
    pub n_q: f64,
    /// Maximising `|z₀|`; `None` when there is no backflow window.
    pub z_max: Option<f64>,
    /// `ln z_max`, finite even where `z_max` underflows to zero.
    pub ln_z_max: Option<f64>,
}

/// `(ln D_i, ln D_f − ln D_i)` for every window where `γ < 0`.
fn window_logs(p: OhmicParams) -> Result<Vec<(f64, f64)>> {
    negative_rate_windows(p)
        .into_iter()
        .map(|(ti, tf)| {
            let ii = integrated_rate(ti, p)?;
            let fi = integrated_rate(tf, p)?;
            Ok((-2.0 * ii, -2.0 * (fi - ii)))
        })
        .collect()
}

/// `ln(e^a + e^b)`.
fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `ln ln(1 + e^x)`.
fn ln_softplus(x: f64) -> f64 {
    if x < -30.0 {
        x + (-0.5 * x.exp()).ln_1p()
    } else if x > 30.0 {
        (x + (-x).exp().ln_1p()).ln()
    } else {
        x.exp().ln_1p().ln()
    }
}

/// `ln(N_Q(z)/ω₀)` at `z = e^u`.
fn ln_objective(u: f64, windows: &[(f64, f64)]) -> f64 {
    let ln_one_minus_z2 = (-(2.0 * u).exp()).ln_1p();
    let terms: Vec<f64> = windows
        .iter()
        .map(|&(a, delta)| {
            let b = a + delta;
            let ln_x = 2.0 * b + (-(-2.0 * delta).exp_m1()).ln() + ln_one_minus_z2
                - log_add_exp(2.0 * a + ln_one_minus_z2, 2.0 * u);
            ln_softplus(ln_x)
        })
        .collect();
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    let ln_sum = m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln();
    u + ln_sum - std::f64::consts::LN_2
}

/// Heat measure of the dephasing channel, maximised over pure initial
/// states by `|z₀|`. Zero (with no optimiser) when `s ≤ 2`.
pub fn nq_of_s(p: OhmicParams, omega0: f64) -> Result<NqResult> {
    if !(omega0 > 0.0) || !omega0.is_finite() {
        return Err(Error::param("omega0", format!("must be finite and > 0, got {omega0}")));
    }
    let windows = window_logs(p)?;
    if windows.is_empty() {
        return Ok(NqResult { n_q: 0.0, z_max: None, ln_z_max: None });
    }
    let lowest = windows.iter().map(|w| w.0).fold(0.0f64, f64::min);
    let (lo, hi) = (lowest - 10.0, -1e-9);
    let (u, g) = scan_then_golden(|u| ln_objective(u, &windows), lo, hi, N_SCAN, 1e-10);
    Ok(NqResult { n_q: omega0 * g.exp(), z_max: Some(u.exp()), ln_z_max: Some(u) })
}

/// Coherence measure of the dephasing channel: `Σ_k [D(t_{2k}) − D(t_{2k−1})]`
/// for a maximally coherent initial state.
pub fn nc_of_s(p: OhmicParams) -> Result<f64> {
    Ok(window_logs(p)?.into_iter().fold(0.0, |acc, (a, delta)| {
        // e^a (e^δ − 1) without overflow in either factor
        acc + (a + delta + (-(-delta).exp_m1()).ln()).exp()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub s: f64,
    pub n_q: f64,
    pub n_c: f64,
    pub z_max: Option<f64>,
    pub ln_z_max: Option<f64>,
}

/// `s_min + i·step` for every `i` with the value not exceeding `s_max`
/// (allowing for rounding in the step count).
pub fn s_grid(s_min: f64, s_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::param("s_step", format!("must be finite and > 0, got {step}")));
    }
    if !(s_min >= 0.0) || !(s_max >= s_min) || !s_max.is_finite() {
        return Err(Error::param("s_max", format!("need 0 ≤ s_min ≤ s_max, got [{s_min}, {s_max}]")));
    }
    let n = ((s_max - s_min) / step + 1e-9).floor() as usize + 1;
    // snap to 12 decimals so decimal steps give the expected values
    Ok((0..n).map(|i| ((s_min + i as f64 * step) * 1e12).round() / 1e12).collect())
}

/// `N_Q` and `N_C` across an ohmicity grid, evaluated in parallel on the
/// current rayon pool and returned in grid order.
pub fn sweep(s_values: &[f64], omega_c: f64, omega0: f64) -> Result<Vec<SweepRow>> {
    s_values
        .par_iter()
        .map(|&s| {
            let p = OhmicParams::new(s, omega_c)?;
            let nq = nq_of_s(p, omega0)?;
            Ok(SweepRow { s, n_q: nq.n_q, n_c: nc_of_s(p)?, z_max: nq.z_max, ln_z_max: nq.ln_z_max })
        })
        .collect()
}

/// Rows as a `s,N_Q,N_C,z_max` table; `z_max` is 0 where undefined.
pub fn sweep_table(rows: &[SweepRow]) -> Table {
    let mut t = Table::new();
    let cols: [fn(&SweepRow) -> f64; 4] = [|r| r.s, |r| r.n_q, |r| r.n_c, |r| r.z_max.unwrap_or(0.0)];
    for (name, f) in SWEEP_HEADER.iter().zip(cols) {
        t.push_column(*name, rows.iter().map(f).collect()).expect("columns share one length");
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::DephasingChannel;
    use crate::thermo::dephasing_heat;

    fn p(s: f64) -> OhmicParams {
        OhmicParams::new(s, 1.0).unwrap()
    }

    // direct evaluation of the heat sum in linear space
    fn direct(s: f64, z: f64) -> f64 {
        let ch = DephasingChannel::new(p(s), 1.0).unwrap();
        negative_rate_windows(p(s))
            .into_iter()
            .map(|(a, b)| {
                let (da, db) = (ch.attenuation(a).unwrap(), ch.attenuation(b).unwrap());
                (dephasing_heat(db, z, 1.0, 1.0) - dephasing_heat(da, z, 1.0, 1.0)).abs()
            })
            .sum()
    }

    #[test]
    fn markovian_values_vanish() {
        for s in [0.5, 1.5, 2.0] {
            let r = nq_of_s(p(s), 1.0).unwrap();
            assert_eq!(r.n_q, 0.0);
            assert!(r.z_max.is_none());
            assert_eq!(nc_of_s(p(s)).unwrap(), 0.0);
        }
    }

    #[test]
    fn log_objective_matches_direct_sum() {
        for s in [2.5, 3.5, 5.0] {
            let windows = window_logs(p(s)).unwrap();
            for z in [0.01, 0.1, 0.5, 0.9] {
                let got = ln_objective(f64::ln(z), &windows).exp();
                let want = direct(s, z);
                assert!((got - want).abs() < 1e-8 * want + 1e-15, "s = {s}, z = {z}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn optimum_is_interior_and_beats_neighbours() {
        for s in [2.5, 3.2, 4.5] {
            let r = nq_of_s(p(s), 1.0).unwrap();
            let z = r.z_max.unwrap();
            assert!(z > 0.0 && z < 1.0);
            assert!(r.n_q >= direct(s, z * 0.9) && r.n_q >= direct(s, z * 1.1));
            assert!((r.n_q - direct(s, z)).abs() < 1e-9);
        }
    }

    #[test]
    fn deep_dephasing_keeps_log_argmax() {
        let r = nq_of_s(p(7.9), 1.0).unwrap();
        assert!(r.ln_z_max.unwrap().is_finite());
    }

    #[test]
    fn linear_in_omega0() {
        let a = nq_of_s(p(3.5), 1.0).unwrap().n_q;
        let b = nq_of_s(p(3.5), 2.5).unwrap().n_q;
        assert!((b - 2.5 * a).abs() < 1e-12 * b);
    }

    #[test]
    fn grid_and_table() {
        let g = s_grid(0.0, 8.0, 0.05).unwrap();
        assert_eq!(g.len(), 161);
        assert_eq!(*g.last().unwrap(), 160.0 * 0.05);
        assert!(s_grid(1.0, 2.0, 0.0).is_err());
        let rows = sweep(&[1.0, 3.0], 1.0, 1.0).unwrap();
        let t = sweep_table(&rows);
        assert_eq!(t.header(), &SWEEP_HEADER);
        assert_eq!(t.column("z_max").unwrap()[0], 0.0);
    }
}
