//! Numerical non-Markovianity measure: search the Bloch ball for the
//! initial state with the largest heat backflow, and compare with the
//! closed-form optimum.
//!
//!     cargo run --release --example state_search

use qthermo::dynamics::{log1p_grid, DephasingChannel, OhmicParams};
use qthermo::nonmarkov::{measure_general, nq_of_s, Functional, MeasureConfig};

fn main() -> qthermo::Result<()> {
    let p = OhmicParams::new(3.5, 1.0)?;
    let ch = DephasingChannel::new(p, 1.0)?;
    let mut cfg = MeasureConfig::new(log1p_grid(1.0, 1e6, 4000));
    cfg.search.refinements = 6;
    for f in [Functional::Heat, Functional::Coherence] {
        let m = measure_general(&ch, f, f.default_alpha_rule(), &cfg)?;
        println!("{f:?}: N = {:.8} at {:?}, alpha {:?}", m.value, m.optimizer, m.alpha);
        println!("  intervals {:?}", m.intervals.pairs());
    }
    let closed = nq_of_s(p, 1.0)?;
    println!("closed form: N_Q = {:.8} at |z0| = {:.6}", closed.n_q, closed.z_max.unwrap());
    Ok(())
}
