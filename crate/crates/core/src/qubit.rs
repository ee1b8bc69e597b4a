//! Qubit states, fields and 2×2 operators.
//!
//! States are Bloch vectors `r = (x, y, z)` with `ρ = (I + r·σ)/2`. Fields
//! are vectors `h` defining `H = −h·σ`, so `h = (0, 0, −ω₀)` gives
//! `H = ω₀σ_z` and internal energy `U = ω₀z`.

use std::fmt;
use std::io::Read;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::ohmic::{ohmic_rate, OhmicParams};
use crate::error::{Error, Result};

/// Slack allowed on `|r| ≤ 1`.
pub const PURITY_SLACK: f64 = 1e-12;

/// Default tolerance of the unital/incoherent checkers.
pub const DEFAULT_CHECK_TOL: f64 = 1e-10;

/// Plain real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector, or `None` for the zero vector.
    pub fn unit(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self * -1.0
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

/// Bloch vector of a qubit state; `|r| ≤ 1` up to [`PURITY_SLACK`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochState(Vec3);

impl BlochState {
    pub const MAXIMALLY_MIXED: BlochState = BlochState(Vec3::ZERO);

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec(Vec3::new(x, y, z))
    }

    pub fn from_vec(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NotAState(format!("non-finite Bloch vector {v:?}")));
        }
        let r = v.norm();
        if r > 1.0 + PURITY_SLACK {
            return Err(Error::NotAState(format!("Bloch vector length {r} exceeds 1")));
        }
        Ok(BlochState(v))
    }

    /// Spherical parametrisation: purity `r`, polar angle `theta` from +z,
    /// azimuth `phi`.
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self::new(r * st * cp, r * st * sp, r * ct)
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn x(&self) -> f64 {
        self.0.x
    }

    pub fn y(&self) -> f64 {
        self.0.y
    }

    pub fn z(&self) -> f64 {
        self.0.z
    }

    /// Purity `r = |r⃗|`.
    pub fn purity(&self) -> f64 {
        self.0.norm()
    }

    /// `z_r = z / r` (cosine of the polar angle); `None` at `r = 0`.
    pub fn z_r(&self) -> Option<f64> {
        let r = self.purity();
        (r > 0.0).then(|| self.0.z / r)
    }

    /// Rotation by `angle` about the z axis (free precession under `H ∝ σ_z`).
    pub fn rotated_z(&self, angle: f64) -> BlochState {
        let (s, c) = angle.sin_cos();
        let v = self.0;
        BlochState(Vec3::new(c * v.x - s * v.y, s * v.x + c * v.y, v.z))
    }
}

impl fmt::Display for BlochState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0.x, self.0.y, self.0.z)
    }
}

/// External field `h` with `H = −h·σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldVector(pub Vec3);

impl FieldVector {
    pub fn new(hx: f64, hy: f64, hz: f64) -> Self {
        FieldVector(Vec3::new(hx, hy, hz))
    }

    /// `h = (0, 0, −ω₀)`, i.e. `H = ω₀σ_z`.
    pub fn z_splitting(omega0: f64) -> Self {
        FieldVector::new(0.0, 0.0, -omega0)
    }

    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn magnitude(&self) -> f64 {
        self.0.norm()
    }

    pub fn hamiltonian(&self) -> ComplexMatrix2 {
        let h = self.0;
        (ComplexMatrix2::sigma_x() * h.x + ComplexMatrix2::sigma_y() * h.y + ComplexMatrix2::sigma_z() * h.z)
            * -1.0
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Row-major 2×2 complex matrix. Hermiticity is not assumed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2(pub [[Complex64; 2]; 2]);

impl ComplexMatrix2 {
    pub const ZERO: ComplexMatrix2 = ComplexMatrix2([[Complex64::new(0.0, 0.0); 2]; 2]);

    pub fn new(a: Complex64, b: Complex64, c_: Complex64, d: Complex64) -> Self {
        ComplexMatrix2([[a, b], [c_, d]])
    }

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Self::new(c(m[0][0], 0.0), c(m[0][1], 0.0), c(m[1][0], 0.0), c(m[1][1], 0.0))
    }

    pub fn identity() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn sigma_x() -> Self {
        Self::from_real([[0.0, 1.0], [1.0, 0.0]])
    }

    pub fn sigma_y() -> Self {
        Self::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0))
    }

    pub fn sigma_z() -> Self {
        Self::from_real([[1.0, 0.0], [0.0, -1.0]])
    }

    /// Lowering operator `σ₋ = |1⟩⟨0|` in the `σ_z` basis.
    pub fn sigma_minus() -> Self {
        Self::from_real([[0.0, 0.0], [1.0, 0.0]])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[i][j]
    }

    pub fn dagger(&self) -> Self {
        let m = self.0;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = self.0;
        Self::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        *self * *o - *o * *self
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        *self * *o + *o * *self
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest deviation from hermiticity, `max |M − M†|`.
    pub fn hermiticity_error(&self) -> f64 {
        (*self - self.dagger()).max_abs()
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.dagger()) * 0.5
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for ComplexMatrix2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + o * -1.0
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<f64> for ComplexMatrix2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }
}

/// `ρ = (I + r·σ)/2`.
pub fn density_from_bloch(state: BlochState) -> ComplexMatrix2 {
    let r = state.vec();
    ComplexMatrix2::new(
        c(0.5 * (1.0 + r.z), 0.0),
        c(0.5 * r.x, -0.5 * r.y),
        c(0.5 * r.x, 0.5 * r.y),
        c(0.5 * (1.0 - r.z), 0.0),
    )
}

/// Inverse of [`density_from_bloch`]. Rejects matrices that are not
/// Hermitian or not unit-trace within `1e−10`, or whose Bloch vector lies
/// outside the ball.
pub fn bloch_from_density(rho: &ComplexMatrix2) -> Result<BlochState> {
    const TOL: f64 = 1e-10;
    if !rho.is_finite() {
        return Err(Error::NotAState("non-finite density matrix".into()));
    }
    let herm = rho.hermiticity_error();
    if herm > TOL {
        return Err(Error::NotAState(format!("hermiticity error {herm:e}")));
    }
    let tr = rho.trace();
    if (tr - c(1.0, 0.0)).norm() > TOL {
        return Err(Error::NotAState(format!("trace {tr} differs from 1")));
    }
    let off = 0.5 * (rho.get(0, 1) + rho.get(1, 0).conj());
    BlochState::new(2.0 * off.re, -2.0 * off.im, (rho.get(0, 0) - rho.get(1, 1)).re)
}

/// Time-dependent relaxation rate of a Lindblad channel.
#[derive(Clone)]
pub enum Rate {
    Constant(f64),
    /// Ohmic-like zero-temperature dephasing rate.
    Ohmic(OhmicParams),
    /// Ohmic rate multiplied by a constant.
    ScaledOhmic(OhmicParams, f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Rate {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            Rate::Constant(g) => *g,
            Rate::Ohmic(p) => ohmic_rate(t, *p),
            Rate::ScaledOhmic(p, k) => k * ohmic_rate(t, *p),
            Rate::Custom(f) => f(t),
        }
    }
}

impl fmt::Debug for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rate::Constant(g) => write!(f, "Constant({g})"),
            Rate::Ohmic(p) => write!(f, "Ohmic({p:?})"),
            Rate::ScaledOhmic(p, k) => write!(f, "ScaledOhmic({p:?}, {k})"),
            Rate::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

/// A Lindblad operator with its rate.
#[derive(Debug, Clone)]
pub struct LindbladTerm {
    pub operator: ComplexMatrix2,
    pub rate: Rate,
}

impl LindbladTerm {
    pub fn new(operator: ComplexMatrix2, rate: Rate) -> Self {
        LindbladTerm { operator, rate }
    }

    pub fn constant(operator: ComplexMatrix2, gamma: f64) -> Self {
        Self::new(operator, Rate::Constant(gamma))
    }
}

/// Operator scaled to unit Frobenius norm, so that verdicts do not depend
/// on the overall magnitude of `A`.
fn normalized(a: &ComplexMatrix2) -> Option<ComplexMatrix2> {
    let n = a.frobenius_norm();
    (n > 0.0).then(|| *a * (1.0 / n))
}

/// Sufficient condition for unitality: every `[A, A†]` vanishes.
/// A `false` verdict does not prove the map is non-unital.
pub fn is_unital_sufficient(terms: &[LindbladTerm], tol: f64) -> bool {
    terms.iter().all(|term| match normalized(&term.operator) {
        None => true,
        Some(a) => a.commutator(&a.dagger()).max_abs() < tol,
    })
}

/// Orthonormal eigenbasis `(|h₀⟩, |h₁⟩)` of `H = −h·σ`, lower energy first.
/// Each vector has its first nonzero component real and positive.
pub fn energy_eigenbasis(field: FieldVector, tol: f64) -> Result<[[Complex64; 2]; 2]> {
    let h = field.magnitude();
    if !(h >= tol) {
        return Err(Error::DegenerateHamiltonian(h));
    }
    let n = field.vec() * (1.0 / h);
    // ground state of −h·σ is the +1 eigenvector of n·σ
    let ground = if n.z >= 0.0 {
        let s = (2.0 * (1.0 + n.z)).sqrt();
        [c((1.0 + n.z) / s, 0.0), c(n.x / s, n.y / s)]
    } else {
        let s = (2.0 * (1.0 - n.z)).sqrt();
        [c(n.x / s, -n.y / s), c((1.0 - n.z) / s, 0.0)]
    };
    let excited = [-ground[1].conj(), ground[0].conj()];
    Ok([fix_phase(ground), fix_phase(excited)])
}

fn fix_phase(v: [Complex64; 2]) -> [Complex64; 2] {
    let lead = if v[0].norm() > 1e-15 { v[0] } else { v[1] };
    let phase = lead.conj() / lead.norm();
    [v[0] * phase, v[1] * phase]
}

/// Matrix elements `⟨h_n|A|h_k⟩` in the energy eigenbasis.
pub fn in_energy_basis(a: &ComplexMatrix2, basis: &[[Complex64; 2]; 2]) -> ComplexMatrix2 {
    let mut out = ComplexMatrix2::ZERO;
    for n in 0..2 {
        for k in 0..2 {
            let mut acc = c(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    acc += basis[n][i].conj() * a.get(i, j) * basis[k][j];
                }
            }
            out.0[n][k] = acc;
        }
    }
    out
}

/// Sufficient condition for an incoherent map in the energy eigenbasis:
/// `⟨h_n|A|h_k⟩⟨h_k|A†|h_m⟩ = 0` for every `k` and `n ≠ m`.
/// A `false` verdict does not prove the map creates coherence.
pub fn is_incoherent_sufficient(terms: &[LindbladTerm], field: FieldVector, tol: f64) -> Result<bool> {
    let basis = energy_eigenbasis(field, tol)?;
    Ok(terms.iter().all(|term| {
        let Some(a) = normalized(&term.operator) else {
            return true;
        };
        let m = in_energy_basis(&a, &basis);
        (0..2).all(|k| {
            // ⟨h_k|A†|h_m⟩ = conj(⟨h_m|A|h_k⟩)
            let p01 = m.get(0, k) * m.get(1, k).conj();
            let p10 = m.get(1, k) * m.get(0, k).conj();
            p01.norm() < tol && p10.norm() < tol
        })
    }))
}

/// JSON form of a rate: a number or `{"type": "ohmic", "s": .., "omega_c": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RateSpec {
    Constant(f64),
    Tagged(TaggedRate),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum TaggedRate {
    Ohmic { s: f64, omega_c: f64 },
}

/// JSON form of a Lindblad term: `matrix` is row-major `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermSpec {
    pub matrix: [[[f64; 2]; 2]; 2],
    pub rate: RateSpec,
}

impl TermSpec {
    pub fn to_term(&self) -> Result<LindbladTerm> {
        let m = self.matrix;
        let op = ComplexMatrix2::new(
            c(m[0][0][0], m[0][0][1]),
            c(m[0][1][0], m[0][1][1]),
            c(m[1][0][0], m[1][0][1]),
            c(m[1][1][0], m[1][1][1]),
        );
        if !op.is_finite() {
            return Err(Error::param("matrix", "entries must be finite"));
        }
        let rate = match self.rate {
            RateSpec::Constant(g) => Rate::Constant(g),
            RateSpec::Tagged(TaggedRate::Ohmic { s, omega_c }) => Rate::Ohmic(OhmicParams::new(s, omega_c)?),
        };
        Ok(LindbladTerm::new(op, rate))
    }
}

/// Parse a JSON array of Lindblad terms.
pub fn load_terms<R: Read>(reader: R) -> Result<Vec<(TermSpec, LindbladTerm)>> {
    let specs: Vec<TermSpec> = serde_json::from_reader(reader)?;
    specs
        .into_iter()
        .map(|s| {
            let t = s.to_term()?;
            Ok((s, t))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &ComplexMatrix2, b: &ComplexMatrix2, tol: f64) -> bool {
        (*a - *b).max_abs() < tol
    }

    #[test]
    fn density_examples() {
        let half = ComplexMatrix2::from_real([[0.5, 0.0], [0.0, 0.5]]);
        assert!(close(&density_from_bloch(BlochState::MAXIMALLY_MIXED), &half, 1e-15));
        let up = ComplexMatrix2::from_real([[1.0, 0.0], [0.0, 0.0]]);
        assert!(close(&density_from_bloch(BlochState::new(0.0, 0.0, 1.0).unwrap()), &up, 1e-15));
        let m = ComplexMatrix2::from_real([[0.75, 0.25], [0.25, 0.25]]);
        assert!(close(&density_from_bloch(BlochState::new(0.5, 0.0, 0.5).unwrap()), &m, 1e-15));
    }

    #[test]
    fn bloch_examples() {
        let half = ComplexMatrix2::from_real([[0.5, 0.0], [0.0, 0.5]]);
        assert_eq!(bloch_from_density(&half).unwrap(), BlochState::MAXIMALLY_MIXED);
        let up = ComplexMatrix2::from_real([[1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(bloch_from_density(&up).unwrap().vec(), Vec3::new(0.0, 0.0, 1.0));
        let m = ComplexMatrix2::from_real([[0.75, 0.25], [0.25, 0.25]]);
        assert_eq!(bloch_from_density(&m).unwrap().vec(), Vec3::new(0.5, 0.0, 0.5));
    }

    #[test]
    fn bloch_y_sign_convention() {
        let s = BlochState::new(0.0, 0.6, 0.0).unwrap();
        let rho = density_from_bloch(s);
        let want = (ComplexMatrix2::identity() + ComplexMatrix2::sigma_y() * 0.6) * 0.5;
        assert!(close(&rho, &want, 1e-15));
        assert_eq!(bloch_from_density(&rho).unwrap(), s);
    }

    #[test]
    fn rejects_non_states() {
        let not_herm = ComplexMatrix2::from_real([[0.5, 0.3], [0.0, 0.5]]);
        assert!(matches!(bloch_from_density(&not_herm), Err(Error::NotAState(_))));
        let bad_trace = ComplexMatrix2::from_real([[0.7, 0.0], [0.0, 0.5]]);
        assert!(matches!(bloch_from_density(&bad_trace), Err(Error::NotAState(_))));
        let outside = ComplexMatrix2::from_real([[1.5, 0.0], [0.0, -0.5]]);
        assert!(matches!(bloch_from_density(&outside), Err(Error::NotAState(_))));
        assert!(BlochState::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn hamiltonian_convention() {
        let h = FieldVector::z_splitting(2.0).hamiltonian();
        assert!(close(&h, &(ComplexMatrix2::sigma_z() * 2.0), 1e-15));
    }

    #[test]
    fn unital_examples() {
        let t = |a| vec![LindbladTerm::constant(a, 1.0)];
        assert!(is_unital_sufficient(&t(ComplexMatrix2::sigma_x()), DEFAULT_CHECK_TOL));
        assert!(is_unital_sufficient(&t(ComplexMatrix2::sigma_z()), DEFAULT_CHECK_TOL));
        assert!(!is_unital_sufficient(&t(ComplexMatrix2::sigma_minus()), DEFAULT_CHECK_TOL));
        // [σ₋, σ₊] = −σ_z
        let sm = ComplexMatrix2::sigma_minus();
        assert!(close(&sm.commutator(&sm.dagger()), &(ComplexMatrix2::sigma_z() * -1.0), 1e-15));
    }

    #[test]
    fn incoherent_examples() {
        let field = FieldVector::z_splitting(1.0);
        let t = |a| vec![LindbladTerm::constant(a, 1.0)];
        assert!(is_incoherent_sufficient(&t(ComplexMatrix2::sigma_x()), field, DEFAULT_CHECK_TOL).unwrap());
        assert!(is_incoherent_sufficient(&t(ComplexMatrix2::sigma_z()), field, DEFAULT_CHECK_TOL).unwrap());
        let had = (ComplexMatrix2::sigma_x() + ComplexMatrix2::sigma_z()) * std::f64::consts::FRAC_1_SQRT_2;
        assert!(!is_incoherent_sufficient(&t(had), field, DEFAULT_CHECK_TOL).unwrap());
    }

    #[test]
    fn degenerate_field_rejected() {
        let terms = vec![LindbladTerm::constant(ComplexMatrix2::sigma_x(), 1.0)];
        let err = is_incoherent_sufficient(&terms, FieldVector::new(0.0, 0.0, 0.0), DEFAULT_CHECK_TOL);
        assert!(matches!(err, Err(Error::DegenerateHamiltonian(_))));
    }

    #[test]
    fn eigenbasis_is_orthonormal_and_ordered() {
        for field in [
            FieldVector::z_splitting(1.0),
            FieldVector::new(0.0, 0.0, 3.0),
            FieldVector::new(0.3, -0.4, 0.2),
            FieldVector::new(-1.0, 0.0, 0.0),
        ] {
            let b = energy_eigenbasis(field, 1e-10).unwrap();
            let h = in_energy_basis(&field.hamiltonian(), &b);
            let mag = field.magnitude();
            assert!((h.get(0, 0).re + mag).abs() < 1e-12);
            assert!((h.get(1, 1).re - mag).abs() < 1e-12);
            assert!(h.get(0, 1).norm() < 1e-12);
            for v in b {
                let lead = if v[0].norm() > 1e-15 { v[0] } else { v[1] };
                assert!(lead.im.abs() < 1e-15 && lead.re > 0.0);
            }
        }
    }

    #[test]
    fn operators_json_round_trip() {
        let doc = r#"[
            {"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "rate": 0.1},
            {"matrix": [[[1,0],[0,0]],[[0,0],[-1,0]]], "rate": {"type": "ohmic", "s": 3.5, "omega_c": 1.0}}
        ]"#;
        let terms = load_terms(doc.as_bytes()).unwrap();
        assert_eq!(terms.len(), 2);
        assert!(close(&terms[0].1.operator, &ComplexMatrix2::sigma_x(), 1e-15));
        assert!(matches!(terms[1].1.rate, Rate::Ohmic(_)));
        assert_eq!(terms[0].1.rate.at(3.0), 0.1);
    }

    #[test]
    fn operators_json_errors_carry_position() {
        let err = load_terms("[{\"matrix\": 3}]".as_bytes()).unwrap_err();
        match err {
            Error::Json(e) => assert_eq!(e.line(), 1),
            other => panic!("unexpected {other:?}"),
        }
    }
}
