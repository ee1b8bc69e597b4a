//! Pure dephasing under an Ohmic-like bath: `H = ω₀σ_z`, Lindblad operator
//! `σ_z` with rate `γ(t, s)`.
//!
//! In the frame co-rotating with `H` the Bloch vector is
//! `[x₀D(t), y₀D(t), z₀]`. The transverse attenuation of this master
//! equation is `D(t) = exp(−2∫₀ᵗγ) = Γ(t)²`, since `σ_z ρ σ_z − ρ` damps
//! off-diagonal elements at twice the rate.

use std::sync::Arc;

use super::ohmic::{decoherence_factor, DecoherenceTable, OhmicParams};
use super::Channel;
use crate::error::{Error, Result};
use crate::qubit::{BlochState, ComplexMatrix2, FieldVector, LindbladTerm, Rate, Vec3};

/// Transverse attenuation `D(t) = Γ(t)²` by direct quadrature.
pub fn coherence_attenuation(t: f64, p: OhmicParams) -> Result<f64> {
    Ok(decoherence_factor(t, p)?.powi(2))
}

/// Bloch vector at time `t` in the co-rotating frame.
pub fn dephasing_bloch(t: f64, r0: BlochState, p: OhmicParams) -> Result<BlochState> {
    let d = coherence_attenuation(t, p)?;
    attenuate(r0, d)
}

fn attenuate(r0: BlochState, d: f64) -> Result<BlochState> {
    let v = r0.vec();
    BlochState::from_vec(Vec3::new(v.x * d, v.y * d, v.z))
}

/// Dephasing channel backed by a shared decoherence table.
#[derive(Debug, Clone)]
pub struct DephasingChannel {
    params: OhmicParams,
    omega0: f64,
    table: Arc<DecoherenceTable>,
}

impl DephasingChannel {
    pub fn new(params: OhmicParams, omega0: f64) -> Result<Self> {
        let table = Arc::new(DecoherenceTable::new(params)?);
        Self::with_table(table, omega0)
    }

    pub fn with_table(table: Arc<DecoherenceTable>, omega0: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::param("omega0", format!("must be finite and > 0, got {omega0}")));
        }
        Ok(DephasingChannel { params: table.params(), omega0, table })
    }

    pub fn params(&self) -> OhmicParams {
        self.params
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn table(&self) -> &DecoherenceTable {
        &self.table
    }

    /// `ln D(t) = −2∫₀ᵗγ`.
    pub fn ln_attenuation(&self, t: f64) -> Result<f64> {
        Ok(-2.0 * self.table.integrated_rate(t)?)
    }

    /// `D(t) = Γ(t)²`.
    pub fn attenuation(&self, t: f64) -> Result<f64> {
        Ok(self.ln_attenuation(t)?.exp())
    }

    /// State in the laboratory frame, precessing at `2ω₀` about z.
    pub fn lab_state(&self, t: f64, r0: BlochState) -> Result<BlochState> {
        Ok(self.state(t, r0)?.rotated_z(2.0 * self.omega0 * t))
    }

    pub fn lindblad_terms(&self) -> Vec<LindbladTerm> {
        vec![LindbladTerm::new(ComplexMatrix2::sigma_z(), Rate::Ohmic(self.params))]
    }
}

impl Channel for DephasingChannel {
    fn field(&self) -> FieldVector {
        FieldVector::z_splitting(self.omega0)
    }

    fn state(&self, t: f64, r0: BlochState) -> Result<BlochState> {
        attenuate(r0, self.attenuation(t)?)
    }
}
