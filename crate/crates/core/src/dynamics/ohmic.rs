//! Ohmic-like zero-temperature dephasing rate and its decoherence factor.
//!
//! The rate is `γ(t) = [1 + (ω_c t)²]^{−s/2} Γ(s) sin(s·arctan(ω_c t))`.
//! Writing `θ = arctan(ω_c t)` maps the half-line onto `[0, π/2)`:
//! `∫₀ᵗ γ = (Γ(s)/ω_c) ∫₀^θ cos^{s−2}φ sin(sφ) dφ`, which stays finite as
//! `t → ∞` whenever `s > 1`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::interp::hermite;
use crate::numerics::quadrature::{integrate, DEFAULT_MAX_SUBDIVISIONS};
use crate::numerics::special::gamma;

/// Absolute tolerance of every rate integral.
pub const QUAD_TOL: f64 = 1e-10;

/// Default number of table cells.
pub const DEFAULT_TABLE_CELLS: usize = 10_000;

/// Default finite span (in units of `1/ω_c`) covered by a table when the
/// integral does not converge at infinity (`s ≤ 2`).
pub const DEFAULT_FINITE_SPAN: f64 = 1e4;

/// Ohmicity `s ≥ 0` and cutoff frequency `ω_c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OhmicParams {
    pub s: f64,
    pub omega_c: f64,
}

impl OhmicParams {
    pub fn new(s: f64, omega_c: f64) -> Result<Self> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(Error::param("s", format!("ohmicity must be finite and ≥ 0, got {s}")));
        }
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(Error::param("omega_c", format!("cutoff must be finite and > 0, got {omega_c}")));
        }
        Ok(OhmicParams { s, omega_c })
    }

    /// `θ = arctan(ω_c t)`, with `t = ∞` mapped to `π/2`.
    pub fn angle(&self, t: f64) -> f64 {
        if t.is_infinite() {
            FRAC_PI_2
        } else {
            (self.omega_c * t).atan()
        }
    }

    /// Integrand of the rate integral in the angle variable.
    fn angular_integrand(&self, g_s: f64, theta: f64) -> f64 {
        g_s / self.omega_c * theta.cos().powf(self.s - 2.0) * (self.s * theta).sin()
    }
}

/// Dephasing rate `γ(t, s)`.
pub fn ohmic_rate(t: f64, p: OhmicParams) -> f64 {
    if p.s == 0.0 {
        return 0.0;
    }
    let wt = p.omega_c * t;
    (1.0 + wt * wt).powf(-0.5 * p.s) * gamma(p.s) * (p.s * wt.atan()).sin()
}

/// `∫₀ᵗ γ(t') dt'` by adaptive quadrature directly in time.
/// `t = ∞` is integrated in the angle variable and is `+∞` for `s ≤ 1`.
pub fn integrated_rate(t: f64, p: OhmicParams) -> Result<f64> {
    if t.is_infinite() {
        return integrated_rate_to_infinity(p);
    }
    if !(t >= 0.0) {
        return Err(Error::param("t", format!("time must be ≥ 0, got {t}")));
    }
    Ok(integrate(|u| ohmic_rate(u, p), 0.0, t, QUAD_TOL, DEFAULT_MAX_SUBDIVISIONS)?.value)
}

fn integrated_rate_to_infinity(p: OhmicParams) -> Result<f64> {
    if p.s == 0.0 {
        return Ok(0.0);
    }
    if p.s <= 1.0 {
        return Ok(f64::INFINITY);
    }
    let g_s = gamma(p.s);
    let mid = 0.5 * FRAC_PI_2;
    let head = integrate(|th| p.angular_integrand(g_s, th), 0.0, mid, QUAD_TOL, DEFAULT_MAX_SUBDIVISIONS)?;
    // near θ = π/2 put φ = π/2 − θ = u^k, k = 1/(s−1), which absorbs the
    // φ^(s−2) endpoint singularity present for 1 < s < 2
    let k = 1.0 / (p.s - 1.0);
    let tail_integrand = |u: f64| {
        let phi = u.powf(k);
        let sinc = if phi > 0.0 { phi.sin() / phi } else { 1.0 };
        g_s / p.omega_c * k * sinc.powf(p.s - 2.0) * (p.s * (FRAC_PI_2 - phi)).sin()
    };
    let tail = integrate(tail_integrand, 0.0, mid.powf(p.s - 1.0), QUAD_TOL, DEFAULT_MAX_SUBDIVISIONS)?;
    Ok(head.value + tail.value)
}

/// `Γ(t) = exp(−∫₀ᵗ γ)`, by direct quadrature.
pub fn decoherence_factor(t: f64, p: OhmicParams) -> Result<f64> {
    Ok((-integrated_rate(t, p)?).exp())
}

/// Cumulative rate integral on `[0, t_span]`, tabulated on knots uniform in
/// `x = ln(1 + ω_c t)` with cubic Hermite interpolation using the exact
/// integrand as slope. The angle variable is avoided because its integrand
/// has a `(π/2 − θ)^(s−2)` cusp. Immutable once built; share it freely
/// between threads.
#[derive(Debug, Clone)]
pub struct DecoherenceTable {
    params: OhmicParams,
    gamma_s: f64,
    x: Vec<f64>,
    integral: Vec<f64>,
    slope: Vec<f64>,
    /// `∫_{t_span}^∞ γ`, infinite for `s ≤ 1`
    tail: f64,
}

impl DecoherenceTable {
    /// Table over `[0, DEFAULT_FINITE_SPAN/ω_c]`.
    pub fn new(params: OhmicParams) -> Result<Self> {
        Self::with_span(params, DEFAULT_FINITE_SPAN / params.omega_c, DEFAULT_TABLE_CELLS)
    }

    /// Table over `[0, t_span]` with `cells` cells. Times beyond the span
    /// fall back to quadrature.
    pub fn with_span(params: OhmicParams, t_span: f64, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::param("cells", "need at least one cell"));
        }
        if !(t_span > 0.0 && t_span.is_finite()) {
            return Err(Error::param("t_span", format!("span must be finite and > 0, got {t_span}")));
        }
        let mut table = DecoherenceTable {
            params,
            gamma_s: gamma(params.s),
            x: Vec::new(),
            integral: Vec::with_capacity(cells + 1),
            slope: Vec::new(),
            tail: 0.0,
        };
        let x_hi = (params.omega_c * t_span).ln_1p();
        let dx = x_hi / cells as f64;
        table.x = (0..=cells).map(|i| i as f64 * dx).collect();
        table.x[cells] = x_hi;
        let cell_tol = QUAD_TOL / cells as f64;
        let mut acc = 0.0;
        table.integral.push(0.0);
        for w in table.x.windows(2) {
            acc += integrate(|x| table.integrand(x), w[0], w[1], cell_tol, DEFAULT_MAX_SUBDIVISIONS)?.value;
            table.integral.push(acc);
        }
        table.slope = table.x.iter().map(|&x| table.integrand(x)).collect();
        table.tail = integrated_rate_to_infinity(params)? - acc;
        Ok(table)
    }

    pub fn params(&self) -> OhmicParams {
        self.params
    }

    fn integrand(&self, x: f64) -> f64 {
        if self.params.s == 0.0 {
            return 0.0;
        }
        let t = x.exp_m1() / self.params.omega_c;
        ohmic_rate(t, self.params) * x.exp() / self.params.omega_c
    }

    /// `∫₀ᵗ γ`; falls back to quadrature beyond the tabulated span.
    pub fn integrated_rate(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::param("t", format!("time must be ≥ 0, got {t}")));
        }
        let n = self.x.len() - 1;
        let hi = self.x[n];
        if t.is_infinite() {
            return Ok(self.integral[n] + self.tail);
        }
        let x = (self.params.omega_c * t).ln_1p();
        if x >= hi {
            let p = self.params;
            let from = p.angle(hi.exp_m1() / p.omega_c);
            let tail = integrate(|th| p.angular_integrand(self.gamma_s, th), from, p.angle(t), QUAD_TOL, DEFAULT_MAX_SUBDIVISIONS)?;
            return Ok(self.integral[n] + tail.value);
        }
        let i = ((x / (hi / n as f64)) as usize).min(n - 1);
        Ok(hermite(self.x[i], self.x[i + 1], self.integral[i], self.integral[i + 1], self.slope[i], self.slope[i + 1], x))
    }

    /// `Γ(t) = exp(−∫₀ᵗ γ)`.
    pub fn factor(&self, t: f64) -> Result<f64> {
        Ok((-self.integrated_rate(t)?).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: f64) -> OhmicParams {
        OhmicParams::new(s, 1.0).unwrap()
    }

    #[test]
    fn rate_examples() {
        assert_eq!(ohmic_rate(0.0, p(3.5)), 0.0);
        assert!((ohmic_rate(1.0, p(2.0)) - 0.5).abs() < 1e-14);
        assert!((ohmic_rate(1.0, p(1.0)) - 0.5).abs() < 1e-14);
        assert_eq!(ohmic_rate(2.0, p(0.0)), 0.0);
    }

    #[test]
    fn rate_uses_scaled_time() {
        let q = OhmicParams::new(2.0, 4.0).unwrap();
        assert!((ohmic_rate(0.25, q) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn invalid_params() {
        assert!(OhmicParams::new(-0.1, 1.0).is_err());
        assert!(OhmicParams::new(1.0, 0.0).is_err());
        assert!(OhmicParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn factor_closed_form_for_unit_ohmicity() {
        // s = 1: γ = t/(1+t²), Γ = (1+t²)^{-1/2}
        for t in [0.0, 0.5, 1.0, 5.0, 20.0] {
            let want = (1.0f64 + t * t).powf(-0.5);
            assert!((decoherence_factor(t, p(1.0)).unwrap() - want).abs() < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn total_integral_matches_gamma_identity() {
        // ∫₀^∞ γ = Γ(s)/(s−1) = Γ(s−1) for s > 1
        for s in [1.5, 2.5, 3.2, 4.0, 6.0] {
            let got = integrated_rate(f64::INFINITY, p(s)).unwrap();
            assert!((got - gamma(s - 1.0)).abs() < 1e-9, "s = {s}: {got}");
        }
        assert!(integrated_rate(f64::INFINITY, p(0.8)).unwrap().is_infinite());
    }

    #[test]
    fn table_agrees_with_direct_quadrature() {
        for s in [1.0, 1.5, 2.05, 3.5, 5.0] {
            let table = DecoherenceTable::new(p(s)).unwrap();
            for t in [0.0, 0.1, 0.48, 1.0, 1.2539603, 3.7, 10.0, 55.0] {
                let direct = integrated_rate(t, p(s)).unwrap();
                let cached = table.integrated_rate(t).unwrap();
                assert!((direct - cached).abs() < 1e-9, "s = {s}, t = {t}: {direct} vs {cached}");
            }
        }
    }

    #[test]
    fn table_reaches_infinity_for_superohmic() {
        let table = DecoherenceTable::new(p(3.5)).unwrap();
        let inf = table.integrated_rate(f64::INFINITY).unwrap();
        assert!((inf - gamma(2.5)).abs() < 1e-9);
    }

    #[test]
    fn table_extends_past_span() {
        let table = DecoherenceTable::with_span(p(1.5), 5.0, 200).unwrap();
        let direct = integrated_rate(40.0, p(1.5)).unwrap();
        assert!((table.integrated_rate(40.0).unwrap() - direct).abs() < 1e-9);
    }

    #[test]
    fn factor_rises_where_rate_is_negative() {
        // s = 3.5: γ < 0 beyond tan(2π/7)
        let q = p(3.5);
        let t1 = (2.0 * std::f64::consts::PI / 7.0).tan();
        let a = decoherence_factor(t1, q).unwrap();
        let b = decoherence_factor(t1 + 1.0, q).unwrap();
        let before = decoherence_factor(t1 - 0.3, q).unwrap();
        assert!(b > a && before > a);
    }
}
