//! Monotonicity-violation witnesses of non-Markovianity: interval
//! detection on sampled thermodynamic series, the measure built from them,
//! initial-state search, and the closed-form dephasing measures.

pub mod crossings;
pub mod dephasing;
pub mod intervals;
pub mod measure;

pub use crossings::{gamma_zero_crossings, negative_rate_windows, Crossing};
pub use dephasing::{nc_of_s, nq_of_s, sweep, sweep_table, NqResult, SweepRow};
pub use intervals::{detect_intervals, measure_from_intervals, Alpha, SignIntervals};
pub use measure::{measure_general, AlphaRule, Functional, MeasureConfig, MeasureResult, Optimizer, SearchGrid};
