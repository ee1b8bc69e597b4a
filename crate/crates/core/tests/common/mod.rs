// Shared helpers for integration tests (included with `mod common;`).
#![allow(dead_code)]

use nalgebra::Matrix2;
use num_complex::Complex64;
use qthermo::qubit::{BlochState, ComplexMatrix2};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform in the Bloch ball.
pub fn random_state(rng: &mut StdRng) -> BlochState {
    let r = rng.gen::<f64>().cbrt();
    let cos_t: f64 = rng.gen_range(-1.0..1.0);
    let phi = rng.gen_range(0.0..std::f64::consts::TAU);
    BlochState::from_spherical(r, cos_t.acos(), phi).unwrap()
}

pub fn to_nalgebra(m: &ComplexMatrix2) -> Matrix2<Complex64> {
    Matrix2::new(m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1))
}

/// Eigen-decomposition of a Hermitian 2×2 matrix: ascending eigenvalues
/// and the matching eigenvectors as columns.
pub fn hermitian_eigen(m: &ComplexMatrix2) -> (Vec<f64>, Matrix2<Complex64>) {
    let e = to_nalgebra(m).symmetric_eigen();
    let mut idx = [0usize, 1];
    idx.sort_by(|&a, &b| e.eigenvalues[a].total_cmp(&e.eigenvalues[b]));
    let vals = idx.iter().map(|&i| e.eigenvalues[i]).collect();
    let vecs = Matrix2::from_columns(&[e.eigenvectors.column(idx[0]).into_owned(), e.eigenvectors.column(idx[1]).into_owned()]);
    (vals, vecs)
}
