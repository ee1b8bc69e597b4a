//! Integrate a master equation with user-supplied Lindblad terms and check
//! it against the closed-form channels.
//!
//!     cargo run --example master_equation

use qthermo::dynamics::{integrate_master, uniform_grid, Channel, DephasingChannel, DissipativeChannel, MasterOptions, OhmicParams};
use qthermo::qubit::{density_from_bloch, BlochState, ComplexMatrix2, LindbladTerm, Rate};

fn main() -> qthermo::Result<()> {
    let r0 = BlochState::new(0.5, 0.0, 0.5)?;
    let grid = uniform_grid(20.0, 101);

    let diss = DissipativeChannel::new(0.1, 1.0)?;
    let h = diss.hamiltonian();
    let terms = [LindbladTerm::constant(ComplexMatrix2::sigma_x(), 0.1)];
    let out = integrate_master(|_| h, &terms, &density_from_bloch(r0), &grid, MasterOptions::default())?;
    let closed = diss.trajectory(r0, &grid)?;
    println!("dissipative: max deviation {:.2e}", max_dev(out.trajectory.states(), closed.states()));
    println!("  trace drift {:.1e}, hermiticity drift {:.1e}", out.max_trace_error, out.max_hermiticity_error);

    let p = OhmicParams::new(3.5, 1.0)?;
    let deph = DephasingChannel::new(p, 1.0)?;
    let terms = [LindbladTerm::new(ComplexMatrix2::sigma_z(), Rate::Ohmic(p))];
    let out = integrate_master(|_| h, &terms, &density_from_bloch(r0), &grid, MasterOptions::default())?;
    let lab: Vec<BlochState> = grid.iter().map(|&t| deph.lab_state(t, r0)).collect::<Result<_, _>>()?;
    println!("dephasing:   max deviation {:.2e}", max_dev(out.trajectory.states(), &lab));
    Ok(())
}

fn max_dev(a: &[BlochState], b: &[BlochState]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.vec() - y.vec()).norm()).fold(0.0, f64::max)
}
