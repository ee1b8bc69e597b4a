//! Heat and coherence non-Markovianity of the dephasing channel as a
//! function of the bath ohmicity, written as CSV to standard output.
//!
//!     cargo run --release --example ohmicity_sweep > sweep.csv

use std::io;

use qthermo::nonmarkov::dephasing::s_grid;
use qthermo::nonmarkov::{sweep, sweep_table};
use qthermo::table::DEFAULT_PRECISION;

fn main() -> qthermo::Result<()> {
    let rows = sweep(&s_grid(0.0, 8.0, 0.05)?, 1.0, 1.0)?;
    let peak = rows.iter().max_by(|a, b| a.n_q.total_cmp(&b.n_q)).unwrap();
    eprintln!("N_Q peaks at s = {:.2} (N_Q = {:.5}, N_C = {:.5})", peak.s, peak.n_q, peak.n_c);
    sweep_table(&rows).write_csv(io::stdout().lock(), DEFAULT_PRECISION)
}
