//! Sufficient conditions for a Lindblad generator to be unital and
//! incoherent in the energy eigenbasis.
//!
//!     cargo run --example map_conditions

use qthermo::qubit::{is_incoherent_sufficient, is_unital_sufficient, ComplexMatrix2, FieldVector, LindbladTerm, DEFAULT_CHECK_TOL};

fn main() -> qthermo::Result<()> {
    let field = FieldVector::z_splitting(1.0);
    let hadamard = (ComplexMatrix2::sigma_x() + ComplexMatrix2::sigma_z()) * std::f64::consts::FRAC_1_SQRT_2;
    let ops = [
        ("sigma_x", ComplexMatrix2::sigma_x()),
        ("sigma_z", ComplexMatrix2::sigma_z()),
        ("sigma_minus", ComplexMatrix2::sigma_minus()),
        ("(sigma_x + sigma_z)/sqrt2", hadamard),
    ];
    for (name, a) in ops {
        let t = [LindbladTerm::constant(a, 1.0)];
        println!(
            "{name:>26}: unital {:5} incoherent {:5}",
            is_unital_sufficient(&t, DEFAULT_CHECK_TOL),
            is_incoherent_sufficient(&t, field, DEFAULT_CHECK_TOL)?
        );
    }
    Ok(())
}
