//! Bit-flip dissipative channel: `H = ω₀σ_z`, Lindblad operator `σ_x`
//! with constant rate `γ`. The Bloch equations are
//! `ẋ = −2ω₀y`, `ẏ = 2ω₀x − 2γy`, `ż = −2γz`.

use num_complex::Complex64;

use super::Channel;
use crate::error::{Error, Result};
use crate::qubit::{BlochState, ComplexMatrix2, FieldVector, LindbladTerm, Vec3};

/// Below `|ω| < DEGENERATE_OMEGA·ω₀` the solution is taken at its `ω → 0` limit.
pub const DEGENERATE_OMEGA: f64 = 1e-8;

/// Closed-form `(x, y)` evaluated with complex `ω = √(γ² − 4ω₀²)`.
/// Both imaginary parts vanish analytically.
pub fn dissipative_xy_complex(t: f64, r0: BlochState, gamma: f64, omega0: f64) -> [Complex64; 2] {
    let (x0, y0) = (r0.x(), r0.y());
    let w = Complex64::new(gamma * gamma - 4.0 * omega0 * omega0, 0.0).sqrt();
    let g = Complex64::new(gamma, 0.0);
    if w.norm() < DEGENERATE_OMEGA * omega0 {
        // sinh(ωt)/ω → t, cosh(ωt) → 1
        let damp = (-gamma * t).exp();
        let x = damp * (x0 + t * (gamma * x0 - 2.0 * omega0 * y0));
        let y = damp * (y0 + t * (2.0 * omega0 * x0 - gamma * y0));
        return [Complex64::new(x, 0.0), Complex64::new(y, 0.0)];
    }
    let alpha_x = w * x0 + gamma * x0 - 2.0 * omega0 * y0;
    let beta_x = w * x0 - gamma * x0 + 2.0 * omega0 * y0;
    let alpha_y = w * y0 - gamma * y0 + 2.0 * omega0 * x0;
    let beta_y = w * y0 + gamma * y0 - 2.0 * omega0 * x0;
    let grow = ((w - g) * t).exp();
    let decay = ((-w - g) * t).exp();
    let x = (alpha_x * grow + beta_x * decay) / (2.0 * w);
    let y = (alpha_y * grow + beta_y * decay) / (2.0 * w);
    [x, y]
}

/// Bloch vector at time `t`.
pub fn dissipative_bloch(t: f64, r0: BlochState, gamma: f64, omega0: f64) -> BlochState {
    let [x, y] = dissipative_xy_complex(t, r0, gamma, omega0);
    debug_assert!(x.im.abs() <= 1e-12 * (1.0 + x.re.abs()) && y.im.abs() <= 1e-12 * (1.0 + y.re.abs()));
    let z = r0.z() * (-2.0 * gamma * t).exp();
    BlochState::from_vec(Vec3::new(x.re, y.re, z)).unwrap_or_else(|_| {
        // rounding can push a pure state a hair outside the ball
        let v = Vec3::new(x.re, y.re, z);
        BlochState::from_vec(v * (1.0 / v.norm())).expect("normalised vector is a state")
    })
}

/// `(cosh ωt, sinh(ωt)/ω)` as real functions of `ω² ∈ ℝ`.
fn cosh_sinhc(w2: f64, t: f64) -> (f64, f64) {
    if w2 > 0.0 {
        let a = w2.sqrt();
        let ch = (a * t).cosh();
        let sh = if a * t < 1e-8 { t } else { (a * t).sinh() / a };
        (ch, sh)
    } else if w2 < 0.0 {
        let a = (-w2).sqrt();
        let sh = if a * t < 1e-8 { t } else { (a * t).sin() / a };
        ((a * t).cos(), sh)
    } else {
        (1.0, t)
    }
}

/// Heat and coherence flows `(𝔔̇, Ċ)` for the initial state `[1/2, 0, 1/2]`.
///
/// The closed forms are rewritten with `c₁ = (cosh 2ωt − 1)/ω²` and
/// `s₁ = sinh(2ωt)/ω`, both real for real or imaginary `ω`, which removes
/// the `ω → 0` singularity and fixes the square-root branch for `γ < 2ω₀`.
pub fn dissipative_flows(t: f64, gamma: f64, omega0: f64) -> (f64, f64) {
    let w2 = gamma * gamma - 4.0 * omega0 * omega0;
    let (ch, sh) = cosh_sinhc(w2, t);
    let c1 = 2.0 * sh * sh;
    let s1 = 2.0 * sh * ch;
    let e = (-2.0 * gamma * t).exp();
    let d = 1.0 + gamma * gamma * c1 + gamma * s1;
    let w0sq = omega0 * omega0;
    let qdot = omega0 * gamma * e * (-2.0 * w0sq * c1 - e) / (e + d);
    let cdot = -2.0 * w0sq * gamma * (-gamma * t).exp() * c1 / d.sqrt();
    (qdot, cdot)
}

/// Initial state for which [`dissipative_flows`] holds.
pub fn flows_reference_state() -> BlochState {
    BlochState::new(0.5, 0.0, 0.5).expect("valid state")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipativeChannel {
    pub gamma: f64,
    pub omega0: f64,
}

impl DissipativeChannel {
    pub fn new(gamma: f64, omega0: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::param("gamma", format!("must be finite and > 0, got {gamma}")));
        }
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::param("omega0", format!("must be finite and > 0, got {omega0}")));
        }
        Ok(DissipativeChannel { gamma, omega0 })
    }

    pub fn lindblad_terms(&self) -> Vec<LindbladTerm> {
        vec![LindbladTerm::constant(ComplexMatrix2::sigma_x(), self.gamma)]
    }

    pub fn hamiltonian(&self) -> ComplexMatrix2 {
        self.field().hamiltonian()
    }
}

impl Channel for DissipativeChannel {
    fn field(&self) -> FieldVector {
        FieldVector::z_splitting(self.omega0)
    }

    fn state(&self, t: f64, r0: BlochState) -> Result<BlochState> {
        Ok(dissipative_bloch(t, r0, self.gamma, self.omega0))
    }
}
