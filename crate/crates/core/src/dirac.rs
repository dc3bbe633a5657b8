//! Dirac gamma matrices, the Majorana basis, and spinor images of SU(2) errors.
//!
//! The standard set is the chiral block form
//!
//! ```text
//! g0 = [[0, 1], [1, 0]]     gk = [[0, -s_k], [s_k, 0]]     g5 = -i g0 g1 g2 g3
//! ```
//!
//! In the Majorana basis every generator of the error rotors is a real
//! 4x4 matrix, and acting on a real spinor `(q0, q1, q2, q3)` they
//! reproduce right multiplication of `q0 + q1 i + q2 j + q3 k` by
//! conjugated quaternion units.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;
use thiserror::Error;

use crate::quaternion::{PauliMatrix, Quaternion};
use crate::tolerance::TOL_ISO;

pub type Matrix4c = Matrix4<Complex64>;
pub type Vector4c = Vector4<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiracError {
    #[error("basis change is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
}

fn block(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>, c: &Matrix2<Complex64>, d: &Matrix2<Complex64>) -> Matrix4c {
    let mut m = Matrix4c::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

fn max_abs(m: &Matrix4c) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise distance between two matrices.
pub fn max_abs_diff(a: &Matrix4c, b: &Matrix4c) -> f64 {
    max_abs(&(a - b))
}

/// Largest `|Im|` over the entries of `m`.
pub fn max_imag(m: &Matrix4c) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}

/// `max |U U^H - 1|`.
pub fn unitarity_deviation(u: &Matrix4c) -> f64 {
    max_abs(&(u * u.adjoint() - Matrix4c::identity()))
}

/// `U g U^H`.
pub fn conjugate(u: &Matrix4c, g: &Matrix4c) -> Matrix4c {
    u * g * u.adjoint()
}

/// The five gamma matrices `g0, g1, g2, g3, g5` in one basis.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub label: String,
    gammas: [Matrix4c; 5],
}

impl GammaSet {
    pub fn new(label: impl Into<String>, gammas: [Matrix4c; 5]) -> Self {
        Self {
            label: label.into(),
            gammas,
        }
    }

    pub fn g0(&self) -> &Matrix4c {
        &self.gammas[0]
    }

    pub fn g1(&self) -> &Matrix4c {
        &self.gammas[1]
    }

    pub fn g2(&self) -> &Matrix4c {
        &self.gammas[2]
    }

    pub fn g3(&self) -> &Matrix4c {
        &self.gammas[3]
    }

    pub fn g5(&self) -> &Matrix4c {
        &self.gammas[4]
    }

    /// `[g0, g1, g2, g3, g5]`.
    pub fn all(&self) -> &[Matrix4c; 5] {
        &self.gammas
    }
}

/// Square of each gamma matrix: `+1` for g0 and g5, `-1` for the spatial ones.
pub const GAMMA_SQUARES: [f64; 5] = [1.0, -1.0, -1.0, -1.0, 1.0];

/// Names in the order of [`GammaSet::all`].
pub const GAMMA_NAMES: [&str; 5] = ["g0", "g1", "g2", "g3", "g5"];

pub fn build_gammas_standard() -> GammaSet {
    let z = Matrix2::zeros();
    let one = Matrix2::identity();
    let g0 = block(&z, &one, &one, &z);
    let spatial = |p: PauliMatrix| {
        let s = p.matrix();
        block(&z, &(-s), &s, &z)
    };
    let g1 = spatial(PauliMatrix::X);
    let g2 = spatial(PauliMatrix::Y);
    let g3 = spatial(PauliMatrix::Z);
    let g5 = (g0 * g1 * g2 * g3) * (-I);
    GammaSet::new("standard", [g0, g1, g2, g3, g5])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordReport {
    /// Largest entry of `g_a g_b + g_b g_a` over `a != b`.
    pub max_anticommutator: f64,
    /// Largest entry of `g_a^2 - sign_a 1`.
    pub max_square: f64,
    /// Largest entry of `g5 + i g0 g1 g2 g3`.
    pub gamma5_deviation: f64,
}

impl CliffordReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_anticommutator
            .max(self.max_square)
            .max(self.gamma5_deviation)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

pub fn clifford_check(g: &GammaSet) -> CliffordReport {
    let gs = g.all();
    let mut max_anticommutator = 0.0f64;
    let mut max_square = 0.0f64;
    for a in 0..5 {
        let sq = gs[a] * gs[a] - Matrix4c::identity() * Complex64::new(GAMMA_SQUARES[a], 0.0);
        max_square = max_square.max(max_abs(&sq));
        for b in a + 1..5 {
            max_anticommutator = max_anticommutator.max(max_abs(&(gs[a] * gs[b] + gs[b] * gs[a])));
        }
    }
    let gamma5_deviation = max_abs(&(g.g5() + g.g0() * g.g1() * g.g2() * g.g3() * I));
    CliffordReport {
        max_anticommutator,
        max_square,
        gamma5_deviation,
    }
}

/// `g' = U g U^H` for all five matrices.
pub fn transform_basis(g: &GammaSet, u: &Matrix4c, label: impl Into<String>) -> Result<GammaSet, DiracError> {
    let deviation = unitarity_deviation(u);
    if deviation > TOL_ISO {
        return Err(DiracError::NotUnitary { deviation });
    }
    Ok(GammaSet::new(label, g.all().map(|m| conjugate(u, &m))))
}

/// `U_M = g2 (g5 + i g1)(g0 + i g3) / 2` from the standard set.
pub fn build_majorana_transform() -> Matrix4c {
    let s = build_gammas_standard();
    s.g2() * (s.g5() + s.g1() * I) * (s.g0() + s.g3() * I) * Complex64::new(0.5, 0.0)
}

/// The explicit entries of `U_M`: `(1 + i)/2` times this matrix.
pub fn majorana_transform_reference() -> Matrix4c {
    let m = -ONE;
    let mi = -I;
    let raw = Matrix4c::new(
        ZERO, ONE, I, ZERO, //
        mi, ZERO, ZERO, ONE, //
        m, ZERO, ZERO, I, //
        ZERO, mi, m, ZERO,
    );
    raw * Complex64::new(0.5, 0.5)
}

/// The Majorana gamma set: the standard set conjugated by `conj(U_M)`.
///
/// Conjugating by `U_M` itself sends `g0, g1, g3, g5` to the negatives of
/// [`majorana_targets`]; with `conj(U_M)` every target and the real error
/// generators come out with the listed signs.
pub fn build_gammas_majorana() -> GammaSet {
    let u = build_majorana_transform().map(|z| z.conj());
    transform_basis(&build_gammas_standard(), &u, "majorana").expect("U_M is unitary")
}

/// Expected Majorana images `-i g3, i g5, g2, i g0, -i g1` in terms of the standard set.
pub fn majorana_targets() -> [Matrix4c; 5] {
    let s = build_gammas_standard();
    [s.g3() * (-I), s.g5() * I, *s.g2(), s.g0() * I, s.g1() * (-I)]
}

/// `E1 = -g2 g3`, `E2 = -g3 g1`, `E3 = g1 g2` in one basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorGenerators {
    pub e1: Matrix4c,
    pub e2: Matrix4c,
    pub e3: Matrix4c,
}

impl ErrorGenerators {
    pub fn all(&self) -> [Matrix4c; 3] {
        [self.e1, self.e2, self.e3]
    }

    pub fn max_imag(&self) -> f64 {
        self.all().iter().map(max_imag).fold(0.0, f64::max)
    }
}

pub fn error_generators(g: &GammaSet) -> ErrorGenerators {
    ErrorGenerators {
        e1: -(g.g2() * g.g3()),
        e2: -(g.g3() * g.g1()),
        e3: g.g1() * g.g2(),
    }
}

/// The products `g2'g3'`, `g3'g1'`, `g1'g2'` in the Majorana basis, entry by entry.
pub const MAJORANA_BIVECTORS: [[[i8; 4]; 4]; 3] = [
    [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]],
    [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
];

/// `g2 g3`, `g3 g1`, `g1 g2`.
pub fn bivectors(g: &GammaSet) -> [Matrix4c; 3] {
    [g.g2() * g.g3(), g.g3() * g.g1(), g.g1() * g.g2()]
}

pub fn sign_pattern_matrix(p: &[[i8; 4]; 4]) -> Matrix4c {
    Matrix4c::from_fn(|r, c| Complex64::new(f64::from(p[r][c]), 0.0))
}

/// Real coefficients `e0 1 + e1 E1 + e2 E2 + e3 E3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRotor {
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl ErrorRotor {
    pub const IDENTITY: Self = Self::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(e0: f64, e1: f64, e2: f64, e3: f64) -> Self {
        Self { e0, e1, e2, e3 }
    }

    /// `e0 + e1 i + e2 j + e3 k`.
    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(self.e0, self.e1, self.e2, self.e3)
    }

    pub fn from_quaternion(q: Quaternion) -> Self {
        Self::new(q.w, q.x, q.y, q.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.to_quaternion().norm_sqr()
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// `e0 1 + e1 E1 + e2 E2 + e3 E3`.
    pub fn matrix(self, gens: &ErrorGenerators) -> Matrix4c {
        let c = |x: f64| Complex64::new(x, 0.0);
        Matrix4c::identity() * c(self.e0) + gens.e1 * c(self.e1) + gens.e2 * c(self.e2) + gens.e3 * c(self.e3)
    }

    /// `e0 1 + e1 g2g3 + e2 g3g1 + e3 g1g2`.
    pub fn bivector_matrix(self, g: &GammaSet) -> Matrix4c {
        let c = |x: f64| Complex64::new(x, 0.0);
        let [b1, b2, b3] = bivectors(g);
        Matrix4c::identity() * c(self.e0) + b1 * c(self.e1) + b2 * c(self.e2) + b3 * c(self.e3)
    }
}

/// `Psi = (xi, eta)` with `phi = (xi + eta)/sqrt 2` and `chi = (xi - eta)/sqrt 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracSpinor {
    pub psi: Vector4c,
}

impl DiracSpinor {
    pub fn new(psi: Vector4c) -> Self {
        Self { psi }
    }

    pub fn from_xi_eta(xi: Vector2<Complex64>, eta: Vector2<Complex64>) -> Self {
        Self::new(Vector4c::new(xi[0], xi[1], eta[0], eta[1]))
    }

    pub fn from_phi_chi(phi: Vector2<Complex64>, chi: Vector2<Complex64>) -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_xi_eta((phi + chi) * h, (phi - chi) * h)
    }

    pub fn xi(&self) -> Vector2<Complex64> {
        Vector2::new(self.psi[0], self.psi[1])
    }

    pub fn eta(&self) -> Vector2<Complex64> {
        Vector2::new(self.psi[2], self.psi[3])
    }

    pub fn phi(&self) -> Vector2<Complex64> {
        (self.xi() + self.eta()) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }

    pub fn chi(&self) -> Vector2<Complex64> {
        (self.xi() - self.eta()) * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }
}

/// A real 4-spinor `(q0, q1, q2, q3)` identified with `q0 + q1 i + q2 j + q3 k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajoranaSpinor(pub Quaternion);

impl MajoranaSpinor {
    pub fn to_vector(self) -> Vector4c {
        let [a, b, c, d] = self.0.to_array();
        Vector4c::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Accepts `v` when every imaginary part is at most `tol`.
    pub fn from_vector(v: &Vector4c, tol: f64) -> Option<Self> {
        if v.iter().any(|z| z.im.abs() > tol) {
            return None;
        }
        Some(Self(Quaternion::new(v[0].re, v[1].re, v[2].re, v[3].re)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiReport {
    /// `chi(input) = 0` within tolerance; otherwise nothing is asserted.
    pub precondition_met: bool,
    pub chi_before: f64,
    pub chi_after: f64,
    pub output: DiracSpinor,
}

impl ChiReport {
    pub fn preserved(&self, tol: f64) -> bool {
        !self.precondition_met || self.chi_after <= tol
    }
}

/// Applies the standard-basis rotor `e0 1 + e1 g2g3 + e2 g3g1 + e3 g1g2` and
/// tracks `|chi|`.
pub fn chi_preservation(rotor: ErrorRotor, s: &DiracSpinor, tol: f64) -> ChiReport {
    let g = build_gammas_standard();
    let output = DiracSpinor::new(rotor.bivector_matrix(&g) * s.psi);
    let chi_before = s.chi().norm();
    ChiReport {
        precondition_met: chi_before <= tol,
        chi_before,
        chi_after: output.chi().norm(),
        output,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrespondenceReport {
    /// `|R(e) Psi_q - Psi(q conj(e))|_max`.
    pub rotor_deviation: f64,
    /// `|Psi(q u) + E_u Psi_q|_max` for `u = i, j, k`.
    pub unit_deviations: [f64; 3],
}

impl CorrespondenceReport {
    pub fn max_deviation(&self) -> f64 {
        self.unit_deviations
            .iter()
            .copied()
            .fold(self.rotor_deviation, f64::max)
    }
}

fn vec_diff(a: &Vector4c, b: &Vector4c) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Compares the rotor action on `Psi_q` with quaternion multiplication `q conj(e)`.
pub fn quaternion_correspondence(rotor: ErrorRotor, q: Quaternion, gens: &ErrorGenerators) -> CorrespondenceReport {
    let psi = MajoranaSpinor(q).to_vector();
    let lhs = rotor.matrix(gens) * psi;
    let rhs = MajoranaSpinor(q * rotor.to_quaternion().conj()).to_vector();
    let mut unit_deviations = [0.0; 3];
    for ((d, e), u) in unit_deviations
        .iter_mut()
        .zip(gens.all())
        .zip([Quaternion::I, Quaternion::J, Quaternion::K])
    {
        let m = -(e * psi);
        *d = vec_diff(&m, &MajoranaSpinor(q * u).to_vector());
    }
    CorrespondenceReport {
        rotor_deviation: vec_diff(&lhs, &rhs),
        unit_deviations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealInvarianceReport {
    /// `|R s - (R Re s + i R Im s)|_max`.
    pub split_deviation: f64,
    /// Largest `|Im|` of `R Re s`.
    pub real_part_leak: f64,
    /// Largest `|Re|` of `R (i Im s)`.
    pub imag_part_leak: f64,
}

impl RealInvarianceReport {
    pub fn max_deviation(&self) -> f64 {
        self.split_deviation
            .max(self.real_part_leak)
            .max(self.imag_part_leak)
    }
}

/// Checks that the rotor acts on the real and imaginary parts of `s` separately.
pub fn real_invariance(rotor: ErrorRotor, s: &Vector4c, gens: &ErrorGenerators) -> RealInvarianceReport {
    let r = rotor.matrix(gens);
    let re = s.map(|z| Complex64::new(z.re, 0.0));
    let im = s.map(|z| Complex64::new(0.0, z.im));
    let (out_re, out_im) = (r * re, r * im);
    RealInvarianceReport {
        split_deviation: vec_diff(&(r * s), &(out_re + out_im)),
        real_part_leak: out_re.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        imag_part_leak: out_im.iter().map(|z| z.re.abs()).fold(0.0, f64::max),
    }
}
