//! The measure `N_F = max_{ρ₀} Σ_k |F(t_f^k) − F(t_i^k)|` for a generic
//! channel, maximised over a Bloch-ball grid.

use std::f64::consts::PI;

use log::warn;
use rayon::prelude::*;
use serde::Serialize;

use super::intervals::{detect_intervals, measure_from_intervals, Alpha, SignIntervals, DEFAULT_EPS_REL};
use crate::dynamics::Channel;
use crate::error::{Error, Result};
use crate::qubit::BlochState;
use crate::thermo::{accumulate_constant, internal_energy, ThermoSample};

/// Which thermodynamic series is tested for monotonicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Functional {
    /// Entropy-based heat.
    Heat,
    /// Entropy-based work.
    Work,
    Coherence,
    Entropy,
}

impl Functional {
    fn value(self, s: &ThermoSample) -> f64 {
        match self {
            Functional::Heat => s.q_ent,
            Functional::Work => s.w_ent,
            Functional::Coherence => s.c,
            Functional::Entropy => s.s,
        }
    }

    /// Direction a Markovian unital, incoherent evolution produces.
    pub fn default_alpha_rule(self) -> AlphaRule {
        match self {
            Functional::Heat => AlphaRule::AgainstEnergy,
            Functional::Work => AlphaRule::WithEnergy,
            Functional::Coherence => AlphaRule::Fixed(Alpha::Decreasing),
            Functional::Entropy => AlphaRule::Fixed(Alpha::Increasing),
        }
    }
}

/// How `α` is chosen for each initial state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaRule {
    Fixed(Alpha),
    /// `α = sgn U₀`.
    WithEnergy,
    /// `α = −sgn U₀`; heat flows out of a state with `U₀ > 0` as it mixes.
    AgainstEnergy,
}

impl AlphaRule {
    pub fn alpha(self, u0: f64) -> Result<Alpha> {
        let with = || Alpha::from_sign(u0).ok_or_else(|| Error::SignAmbiguous(format!("U0 = {u0}")));
        match self {
            AlphaRule::Fixed(a) => Ok(a),
            AlphaRule::WithEnergy => with(),
            AlphaRule::AgainstEnergy => with().map(Alpha::flipped),
        }
    }
}

/// Initial states: purity shells × polar angles × azimuths, followed by
/// `refinements` passes of a local pattern search whose steps halve on each
/// pass.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchGrid {
    pub shells: Vec<f64>,
    pub n_theta: usize,
    pub n_phi: usize,
    pub refinements: usize,
}

impl Default for SearchGrid {
    fn default() -> Self {
        SearchGrid { shells: vec![0.25, 0.5, 0.75, 1.0], n_theta: 25, n_phi: 12, refinements: 1 }
    }
}

impl SearchGrid {
    fn validate(&self) -> Result<()> {
        if self.shells.is_empty() || self.n_theta == 0 || self.n_phi == 0 {
            return Err(Error::param("search", "grid is empty"));
        }
        if let Some(r) = self.shells.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
            return Err(Error::param("search", format!("shell radius {r} outside (0, 1]")));
        }
        Ok(())
    }

    fn theta_step(&self) -> f64 {
        if self.n_theta > 1 {
            PI / (self.n_theta - 1) as f64
        } else {
            PI
        }
    }

    fn phi_step(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    fn shell_step(&self) -> f64 {
        let mut s = self.shells.clone();
        s.sort_by(f64::total_cmp);
        s.windows(2).map(|w| w[1] - w[0]).filter(|d| *d > 0.0).fold(s[0], f64::min)
    }

    fn points(&self) -> Vec<(f64, f64, f64)> {
        let mut out = Vec::with_capacity(self.shells.len() * self.n_theta * self.n_phi);
        for &r in &self.shells {
            for i in 0..self.n_theta {
                let theta = if self.n_theta > 1 { i as f64 * self.theta_step() } else { 0.5 * PI };
                for j in 0..self.n_phi {
                    out.push((r, theta, j as f64 * self.phi_step()));
                }
            }
        }
        out
    }
}

/// Time samples and detection settings for [`measure_general`].
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureConfig {
    pub times: Vec<f64>,
    pub search: SearchGrid,
    /// Deadband on `|Ḟ|`, relative to `max|F|` of each series.
    pub eps_rel: f64,
    pub min_width: f64,
}

impl MeasureConfig {
    pub fn new(times: Vec<f64>) -> Self {
        MeasureConfig { times, search: SearchGrid::default(), eps_rel: DEFAULT_EPS_REL, min_width: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Optimizer {
    Bloch([f64; 3]),
    AbsZ0(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub optimizer: Optimizer,
    pub intervals: SignIntervals,
    pub alpha: Alpha,
}

/// Inner sum for one initial state; `None` when the α rule is undefined
/// there.
pub fn state_measure<C: Channel + ?Sized>(
    channel: &C,
    functional: Functional,
    rule: AlphaRule,
    r0: BlochState,
    cfg: &MeasureConfig,
) -> Result<Option<MeasureResult>> {
    let alpha = match rule.alpha(internal_energy(r0, channel.field())) {
        Ok(a) => a,
        Err(Error::SignAmbiguous(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let traj = channel.trajectory(r0, &cfg.times)?;
    let thermo = accumulate_constant(&traj, channel.field())?;
    let fs = thermo.column(|s| functional.value(s));
    let max_abs = fs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let eps = (cfg.eps_rel * max_abs).max(f64::MIN_POSITIVE);
    let intervals = detect_intervals(&cfg.times, &fs, alpha, eps, cfg.min_width)?;
    let value = measure_from_intervals(&cfg.times, &fs, &intervals);
    let v = r0.vec();
    Ok(Some(MeasureResult { value, optimizer: Optimizer::Bloch([v.x, v.y, v.z]), intervals, alpha }))
}

// Spherical angles on the grid hit the equator and poles exactly; snap the
// rounding residue of cos(π/2) etc. so U₀ = 0 states are recognised.
fn grid_state(r: f64, theta: f64, phi: f64) -> Result<BlochState> {
    let v = BlochState::from_spherical(r, theta, phi)?.vec();
    let snap = |c: f64| if c.abs() < 1e-14 * r { 0.0 } else { c };
    BlochState::new(snap(v.x), snap(v.y), snap(v.z))
}

fn best_of<C: Channel + ?Sized>(
    channel: &C,
    functional: Functional,
    rule: AlphaRule,
    cfg: &MeasureConfig,
    points: &[(f64, f64, f64)],
) -> Result<(Option<(usize, MeasureResult)>, usize)> {
    let results: Vec<Result<Option<MeasureResult>>> = points
        .par_iter()
        .map(|&(r, th, ph)| state_measure(channel, functional, rule, grid_state(r, th, ph)?, cfg))
        .collect();
    let mut best: Option<(usize, MeasureResult)> = None;
    let mut skipped = 0;
    for (i, res) in results.into_iter().enumerate() {
        match res? {
            None => skipped += 1,
            Some(m) => {
                if best.as_ref().map_or(true, |(_, b)| m.value > b.value) {
                    best = Some((i, m));
                }
            }
        }
    }
    Ok((best, skipped))
}

/// Maximise the inner measure over the initial-state grid of `cfg.search`.
///
/// States where the α rule is undefined (`U₀ = 0` for heat and work) are
/// skipped with a warning; if every state is skipped the result is
/// [`Error::SignAmbiguous`]. Ties keep the first state in grid order, so
/// the result does not depend on the thread count.
pub fn measure_general<C: Channel + ?Sized>(
    channel: &C,
    functional: Functional,
    rule: AlphaRule,
    cfg: &MeasureConfig,
) -> Result<MeasureResult> {
    cfg.search.validate()?;
    let points = cfg.search.points();
    let (best, skipped) = best_of(channel, functional, rule, cfg, &points)?;
    if skipped > 0 {
        warn!("{skipped} of {} initial states skipped: α undefined where U0 = 0", points.len());
    }
    let (idx, mut best) = best.ok_or_else(|| Error::SignAmbiguous("α undefined for every searched state".into()))?;
    let mut centre = points[idx];
    let (mut dr, mut dth, mut dph) = (cfg.search.shell_step(), cfg.search.theta_step(), cfg.search.phi_step());
    for _ in 0..cfg.search.refinements {
        dr *= 0.5;
        dth *= 0.5;
        dph *= 0.5;
        let mut local = Vec::with_capacity(27);
        for a in [-1.0, 0.0, 1.0] {
            for b in [-1.0, 0.0, 1.0] {
                for c in [-1.0, 0.0, 1.0] {
                    let r = (centre.0 + a * dr).clamp(1e-3, 1.0);
                    let th = (centre.1 + b * dth).clamp(0.0, PI);
                    local.push((r, th, centre.2 + c * dph));
                }
            }
        }
        if let (Some((i, m)), _) = best_of(channel, functional, rule, cfg, &local)? {
            if m.value > best.value {
                best = m;
                centre = local[i];
            }
        }
    }
    Ok(best)
}
