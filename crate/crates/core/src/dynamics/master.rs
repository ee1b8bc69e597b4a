//! Fixed-order integration of the time-local master equation
//! `ρ̇ = −i[H(t), ρ] + Σᵢ γᵢ(t)(AᵢρAᵢ† − ½{Aᵢ†Aᵢ, ρ})`.

use super::{Channel, Trajectory};
use crate::error::{Error, Result};
use crate::numerics::diff::check_increasing;
use crate::qubit::{bloch_from_density, density_from_bloch, BlochState, ComplexMatrix2, FieldVector, LindbladTerm, Vec3};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasterOptions {
    /// Bound on the per-interval local error estimate (max entry modulus).
    pub tol: f64,
    /// Largest substep count allowed for one grid interval.
    pub max_substeps: usize,
    /// Substep count tried on the first interval.
    pub initial_substeps: usize,
}

impl Default for MasterOptions {
    fn default() -> Self {
        MasterOptions { tol: 1e-10, max_substeps: 1 << 18, initial_substeps: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct MasterOutput {
    pub trajectory: Trajectory,
    /// Largest `|tr ρ − 1|` seen before renormalisation.
    pub max_trace_error: f64,
    /// Largest `max |ρ − ρ†|` seen before re-hermitisation.
    pub max_hermiticity_error: f64,
}

fn generator<H>(hamiltonian: &H, terms: &[LindbladTerm], t: f64, rho: &ComplexMatrix2) -> ComplexMatrix2
where
    H: Fn(f64) -> ComplexMatrix2,
{
    let minus_i = Complex64::new(0.0, -1.0);
    let mut out = hamiltonian(t).commutator(rho).scale(minus_i);
    for term in terms {
        let g = term.rate.at(t);
        if g == 0.0 {
            continue;
        }
        let a = term.operator;
        let ad = a.dagger();
        let d = a * *rho * ad - (ad * a).anticommutator(rho) * 0.5;
        out = out + d * g;
    }
    out
}

fn rk4_steps<H>(hamiltonian: &H, terms: &[LindbladTerm], t0: f64, t1: f64, rho: ComplexMatrix2, n: usize) -> ComplexMatrix2
where
    H: Fn(f64) -> ComplexMatrix2,
{
    let h = (t1 - t0) / n as f64;
    let mut y = rho;
    for k in 0..n {
        let t = t0 + h * k as f64;
        let k1 = generator(hamiltonian, terms, t, &y);
        let k2 = generator(hamiltonian, terms, t + 0.5 * h, &(y + k1 * (0.5 * h)));
        let k3 = generator(hamiltonian, terms, t + 0.5 * h, &(y + k2 * (0.5 * h)));
        let k4 = generator(hamiltonian, terms, t + h, &(y + k3 * h));
        y = y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    y
}

/// Integrate from `rho0` at `grid[0] = 0` and sample at every grid time.
///
/// Each interval is covered by classical RK4 substeps; the count is doubled
/// until the step-doubling error estimate `|ρ₂ₙ − ρₙ|/15` is below
/// `opts.tol`. Output samples are re-hermitised and trace-normalised.
pub fn integrate_master<H>(
    hamiltonian: H,
    terms: &[LindbladTerm],
    rho0: &ComplexMatrix2,
    grid: &[f64],
    opts: MasterOptions,
) -> Result<MasterOutput>
where
    H: Fn(f64) -> ComplexMatrix2,
{
    if grid.is_empty() || grid[0] != 0.0 {
        return Err(Error::GridTooCoarse("grid must start at t = 0".into()));
    }
    check_increasing(grid)?;
    let first = bloch_from_density(rho0)?;
    let mut rho = density_from_bloch(first);
    let mut states = vec![first];
    let mut n = opts.initial_substeps.max(1);
    let mut max_trace_error: f64 = 0.0;
    let mut max_herm_error: f64 = 0.0;
    for w in grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let next = loop {
            let coarse = rk4_steps(&hamiltonian, terms, t0, t1, rho, n);
            let fine = rk4_steps(&hamiltonian, terms, t0, t1, rho, 2 * n);
            let err = (fine - coarse).max_abs() / 15.0;
            if err < opts.tol {
                if err < opts.tol / 64.0 && n > 1 {
                    n /= 2;
                }
                break fine;
            }
            n *= 2;
            if 2 * n > opts.max_substeps {
                return Err(Error::StepSizeUnderflow { t: t0, budget: opts.max_substeps });
            }
        };
        max_trace_error = max_trace_error.max((next.trace() - Complex64::new(1.0, 0.0)).norm());
        max_herm_error = max_herm_error.max(next.hermiticity_error());
        let herm = next.hermitian_part();
        rho = herm.scale(Complex64::new(1.0, 0.0) / herm.trace());
        states.push(project_to_ball(&rho)?);
    }
    Ok(MasterOutput {
        trajectory: Trajectory::new(grid.to_vec(), states)?,
        max_trace_error,
        max_hermiticity_error: max_herm_error,
    })
}

// Integration error can leave a pure state marginally outside the ball.
fn project_to_ball(rho: &ComplexMatrix2) -> Result<BlochState> {
    let off = rho.get(1, 0);
    let v = Vec3::new(2.0 * off.re, 2.0 * off.im, (rho.get(0, 0) - rho.get(1, 1)).re);
    let r = v.norm();
    if r > 1.0 && r < 1.0 + 1e-6 {
        return BlochState::from_vec(v * (1.0 / r));
    }
    BlochState::from_vec(v)
}

/// Channel defined by a constant field and a set of Lindblad terms,
/// solved numerically.
#[derive(Debug, Clone)]
pub struct MasterChannel {
    pub field: FieldVector,
    pub terms: Vec<LindbladTerm>,
    pub options: MasterOptions,
}

impl MasterChannel {
    pub fn new(field: FieldVector, terms: Vec<LindbladTerm>) -> Self {
        MasterChannel { field, terms, options: MasterOptions::default() }
    }
}

impl Channel for MasterChannel {
    fn field(&self) -> FieldVector {
        self.field
    }

    fn state(&self, t: f64, r0: BlochState) -> Result<BlochState> {
        if t == 0.0 {
            return Ok(r0);
        }
        let out = self.trajectory(r0, &[0.0, t])?;
        Ok(out.states()[1])
    }

    fn trajectory(&self, r0: BlochState, grid: &[f64]) -> Result<Trajectory> {
        let h = self.field.hamiltonian();
        Ok(integrate_master(|_| h, &self.terms, &density_from_bloch(r0), grid, self.options)?.trajectory)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::uniform_grid;

    #[test]
    fn free_precession() {
        let omega0 = 1.0;
        let h = FieldVector::z_splitting(omega0).hamiltonian();
        let rho0 = density_from_bloch(BlochState::new(1.0, 0.0, 0.0).unwrap());
        let grid = uniform_grid(10.0, 101);
        let out = integrate_master(|_| h, &[], &rho0, &grid, MasterOptions::default()).unwrap();
        for (t, s) in out.trajectory.iter() {
            assert!((s.x() - (2.0 * omega0 * t).cos()).abs() < 1e-8, "t = {t}");
            assert!((s.purity() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let h = ComplexMatrix2::sigma_z();
        let rho0 = density_from_bloch(BlochState::MAXIMALLY_MIXED);
        assert!(integrate_master(|_| h, &[], &rho0, &[0.5, 1.0], MasterOptions::default()).is_err());
        let bad = ComplexMatrix2::from_real([[2.0, 0.0], [0.0, 0.0]]);
        let err = integrate_master(|_| h, &[], &bad, &[0.0, 1.0], MasterOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NotAState(_)));
    }

    #[test]
    fn tiny_budget_underflows() {
        let h = ComplexMatrix2::sigma_z() * 50.0;
        let rho0 = density_from_bloch(BlochState::new(1.0, 0.0, 0.0).unwrap());
        let opts = MasterOptions { tol: 1e-14, max_substeps: 8, initial_substeps: 1 };
        let err = integrate_master(|_| h, &[], &rho0, &[0.0, 10.0], opts).unwrap_err();
        assert!(matches!(err, Error::StepSizeUnderflow { .. }));
    }
}
