//! Trajectory generators: closed-form channels and a generic integrator
//! for time-local master equations.

pub mod dephasing;
pub mod dissipative;
pub mod master;
pub mod ohmic;

pub use dephasing::{dephasing_bloch, DephasingChannel};
pub use dissipative::{dissipative_bloch, dissipative_flows, flows_reference_state, DissipativeChannel};
pub use master::{integrate_master, MasterChannel, MasterOptions, MasterOutput};
pub use ohmic::{decoherence_factor, integrated_rate, ohmic_rate, DecoherenceTable, OhmicParams};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::diff::check_increasing;
use crate::qubit::{BlochState, FieldVector};

/// Time-ordered Bloch states.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<BlochState>,
}

impl Trajectory {
    pub fn new(times: Vec<f64>, states: Vec<BlochState>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::param(
                "states",
                format!("{} times but {} states", times.len(), states.len()),
            ));
        }
        check_increasing(&times)?;
        Ok(Trajectory { times, states })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[BlochState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, BlochState)> + '_ {
        self.times.iter().copied().zip(self.states.iter().copied())
    }
}

/// A single-qubit dynamical map with a time-independent field.
pub trait Channel: Sync {
    /// Field entering the thermodynamic bookkeeping.
    fn field(&self) -> FieldVector;

    /// State at time `t` from `r0` at `t = 0`.
    fn state(&self, t: f64, r0: BlochState) -> Result<BlochState>;

    fn trajectory(&self, r0: BlochState, grid: &[f64]) -> Result<Trajectory> {
        let states = grid.iter().map(|&t| self.state(t, r0)).collect::<Result<Vec<_>>>()?;
        Trajectory::new(grid.to_vec(), states)
    }
}

/// `n` evenly spaced times on `[0, t_max]`.
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|i| t_max * i as f64 / (n - 1) as f64).collect()
}

/// `n` times on `[0, t_max]` evenly spaced in `ln(1 + ω_c t)`: about
/// uniform for `ω_c t ≲ 1`, geometric in the tail, so neighbouring cells
/// never differ in width by more than a factor `e^{Δ}`.
pub fn log1p_grid(omega_c: f64, t_max: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let hi = (omega_c * t_max).ln_1p();
    let mut g: Vec<f64> = (0..n).map(|i| (hi * i as f64 / (n - 1) as f64).exp_m1() / omega_c).collect();
    g[n - 1] = t_max;
    g
}
