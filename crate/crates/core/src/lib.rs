//! Thermodynamics of open single-qubit dynamics and thermodynamic
//! witnesses of non-Markovianity.
//!
//! States are Bloch vectors (`ρ = (I + r⃗·σ⃗)/2`) and Hamiltonians are
//! `H = −h⃗·σ⃗`, so `U = −h⃗·r⃗`. The two model channels use
//! `H = ω₀σ_z`, i.e. `h⃗ = (0, 0, −ω₀)`.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod nonmarkov;
pub mod numerics;
pub mod qubit;
pub mod table;
pub mod thermo;

pub use error::{Error, Result};
