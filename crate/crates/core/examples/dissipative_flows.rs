//! Heat and coherence flows of a qubit under `σ_x` dissipation, compared
//! with their closed forms.
//!
//!     cargo run --example dissipative_flows

use qthermo::dynamics::{dissipative_flows, flows_reference_state, uniform_grid, Channel, DissipativeChannel};
use qthermo::numerics::diff::derivative;
use qthermo::thermo::accumulate_constant;

fn main() -> qthermo::Result<()> {
    let ch = DissipativeChannel::new(0.1, 1.0)?;
    let grid = uniform_grid(50.0, 10_001);
    let thermo = accumulate_constant(&ch.trajectory(flows_reference_state(), &grid)?, ch.field())?;
    let rates = thermo.rates()?;
    let c_dot = derivative(&grid, &thermo.column(|s| s.c))?;

    println!("{:>6} {:>13} {:>13} {:>13} {:>13}", "t", "dQ/dt", "closed", "dC/dt", "closed");
    for i in (0..grid.len()).step_by(1000) {
        let (q, c) = dissipative_flows(grid[i], 0.1, 1.0);
        println!("{:6.1} {:13.6e} {:13.6e} {:13.6e} {:13.6e}", grid[i], rates[i].dq_ent, q, c_dot[i], c);
    }
    let last = thermo.samples().last().unwrap();
    println!("after t = 50: Q = {:.6}, W = {:.6}, first-law residual {:.1e}", last.q_ent, last.w_ent, thermo.first_law_residual());
    Ok(())
}
