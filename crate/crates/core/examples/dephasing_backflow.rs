//! Heat exchanged by a dephasing qubit for a Markovian (`s = 1.5`) and a
//! non-Markovian (`s = 3.5`) bath. The second shows heat flowing back into
//! the qubit while the dephasing rate is negative.
//!
//!     cargo run --example dephasing_backflow

use qthermo::dynamics::{uniform_grid, Channel, DephasingChannel, OhmicParams};
use qthermo::nonmarkov::{detect_intervals, negative_rate_windows, Alpha};
use qthermo::nonmarkov::intervals::default_eps_flow;
use qthermo::qubit::BlochState;
use qthermo::thermo::accumulate_constant;

fn main() -> qthermo::Result<()> {
    let z0: f64 = 0.05;
    let r0 = BlochState::new((1.0 - z0 * z0).sqrt(), 0.0, z0)?;
    let grid = uniform_grid(10.0, 4001);
    for s in [1.5, 3.5] {
        let p = OhmicParams::new(s, 1.0)?;
        let ch = DephasingChannel::new(p, 1.0)?;
        let thermo = accumulate_constant(&ch.trajectory(r0, &grid)?, ch.field())?;
        let q = thermo.column(|x| x.q_ent);
        // U₀ > 0, so heat should only decrease
        let back = detect_intervals(&grid, &q, Alpha::Decreasing, default_eps_flow(&q), 1e-6)?;
        println!("s = {s}: Q(10) = {:.6}", q.last().unwrap());
        println!("  heat backflow on {:?}", back.pairs());
        println!("  negative-rate windows {:?}", negative_rate_windows(p));
    }
    Ok(())
}
