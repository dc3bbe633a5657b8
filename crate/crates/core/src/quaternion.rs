//! Hamilton quaternions and the quaternionic description of a qubit.
//!
//! A qubit `a|0> + b|1>` is carried by the quaternion `a + b j`, where the
//! complex unit of `a` and `b` is identified with *left* multiplication by
//! `i`. In this picture unitary gates act by right multiplication
//! (`q -> q * conj(u)`), global phases by left multiplication with
//! `exp(phi i)`, and the Bloch sphere is reached through the Hopf map
//! `q -> q^-1 i q`.
//!
//! Components are stored in `(w, x, y, z)` order for `1, i, j, k` with the
//! Hamilton convention `ij = k`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Matrix2, SMatrix, SVector, Vector2};
use num_complex::Complex64;
use thiserror::Error;

use crate::tolerance::{TOL_UNIT, TOL_ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum QuaternionError {
    #[error("quaternion norm {norm:e} is too close to zero")]
    Degenerate { norm: f64 },
    #[error("quaternion is not unit: |q| = {norm}")]
    NotUnit { norm: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);
    /// `1, i, j, k` in storage order.
    pub const BASIS: [Self; 4] = [Self::ONE, Self::I, Self::J, Self::K];

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn from_array(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// `exp(phi i) = cos(phi) + sin(phi) i`.
    pub fn exp_i(phi: f64) -> Self {
        Self::new(phi.cos(), phi.sin(), 0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    /// `conj(q) / |q|^2`; rejects quaternions with norm at or below `TOL_ZERO`.
    pub fn inverse(self) -> Result<Self, QuaternionError> {
        let n2 = self.norm_sqr();
        if n2.sqrt() <= TOL_ZERO {
            return Err(QuaternionError::Degenerate { norm: n2.sqrt() });
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    pub fn imag(self) -> ImaginaryVector {
        ImaginaryVector::new(self.x, self.y, self.z)
    }

    /// Largest componentwise difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        let d = self - other;
        d.w.abs().max(d.x.abs()).max(d.y.abs()).max(d.z.abs())
    }

    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// The complex pair `(a, b)` with `self = a + b j`.
    pub fn to_pair(self) -> ComplexPair {
        ComplexPair::new(Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    /// Real 4x4 matrix `R` with `R * coords(q) = coords(q * self)`.
    pub fn right_mul_matrix(self) -> SMatrix<f64, 4, 4> {
        let mut m = SMatrix::<f64, 4, 4>::zeros();
        for (col, e) in Self::BASIS.iter().enumerate() {
            let img = (*e * self).to_array();
            for row in 0..4 {
                m[(row, col)] = img[row];
            }
        }
        m
    }

    /// Real 4x4 matrix `L` with `L * coords(q) = coords(self * q)`.
    pub fn left_mul_matrix(self) -> SMatrix<f64, 4, 4> {
        let mut m = SMatrix::<f64, 4, 4>::zeros();
        for (col, e) in Self::BASIS.iter().enumerate() {
            let img = (self * *e).to_array();
            for row in 0..4 {
                m[(row, col)] = img[row];
            }
        }
        m
    }
}

impl Mul for Quaternion {
    type Output = Self;

    /// Hamilton product.
    fn mul(self, h: Self) -> Self {
        let q = self;
        Self::new(
            q.w * h.w - q.x * h.x - q.y * h.y - q.z * h.z,
            q.w * h.x + q.x * h.w + q.y * h.z - q.z * h.y,
            q.w * h.y - q.x * h.z + q.y * h.w + q.z * h.x,
            q.w * h.z + q.x * h.y - q.y * h.x + q.z * h.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+.6} {:+.6}i {:+.6}j {:+.6}k", self.w, self.x, self.y, self.z)
    }
}

/// A quaternion whose norm is within [`TOL_UNIT`] of one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: Self = Self(Quaternion::ONE);

    pub fn new(q: Quaternion) -> Result<Self, QuaternionError> {
        let norm = q.norm();
        if (norm - 1.0).abs() > TOL_UNIT {
            return Err(QuaternionError::NotUnit { norm });
        }
        Ok(Self(q))
    }

    /// Rescales `q` onto the unit sphere.
    pub fn normalize(q: Quaternion) -> Result<Self, QuaternionError> {
        let norm = q.norm();
        if norm <= TOL_ZERO {
            return Err(QuaternionError::Degenerate { norm });
        }
        Ok(Self(q.scale(1.0 / norm)))
    }

    pub fn get(self) -> Quaternion {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    /// `q v conj(q)`: rotation of a 3-vector.
    pub fn rotate(self, v: ImaginaryVector) -> ImaginaryVector {
        (self.0 * v.to_quaternion() * self.0.conj()).imag()
    }

    /// Rotation axis, or `None` for a real quaternion.
    pub fn axis(self) -> Option<ImaginaryVector> {
        let v = self.0.imag();
        let n = v.norm();
        (n > TOL_ZERO).then(|| v.scale(1.0 / n))
    }
}

impl Mul for UnitQuaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}

/// Amplitudes of `a|0> + b|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    pub a: Complex64,
    pub b: Complex64,
}

impl ComplexPair {
    pub const fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    /// `a_x + a_y i + b_x j + b_y k`.
    pub fn embed(self) -> Quaternion {
        Quaternion::new(self.a.re, self.a.im, self.b.re, self.b.im)
    }

    pub fn to_vector(self) -> Vector2<Complex64> {
        Vector2::new(self.a, self.b)
    }

    pub fn from_vector(v: &Vector2<Complex64>) -> Self {
        Self::new(v[0], v[1])
    }

    pub fn scale(self, s: Complex64) -> Self {
        Self::new(self.a * s, self.b * s)
    }
}

/// A pure-imaginary quaternion `x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ImaginaryVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ImaginaryVector {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn to_quaternion(self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn max_abs_diff(self, o: Self) -> f64 {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }
}

/// `q * conj(u)`: the right action of SU(2) on a quaternionic qubit.
pub fn su2_right_action(q: Quaternion, u: UnitQuaternion) -> Quaternion {
    q * u.get().conj()
}

/// The 2x2 unitary `[[conj c, conj d], [-d, c]]` for `u = c + d j`.
///
/// Under [`ComplexPair::embed`] this matrix acting on `(a, b)` agrees with
/// [`su2_right_action`].
pub fn su2_matrix(u: UnitQuaternion) -> Matrix2<Complex64> {
    let ComplexPair { a: c, b: d } = u.get().to_pair();
    Matrix2::new(c.conj(), d.conj(), -d, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [Self; 3] = [Self::X, Self::Y, Self::Z];

    /// The right factor of the sandwich `i q (.)`.
    fn right_unit(self) -> Quaternion {
        match self {
            Self::X => Quaternion::I,
            Self::Y => Quaternion::J,
            Self::Z => Quaternion::K,
        }
    }
}

impl fmt::Display for PauliAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::X => "x",
            Self::Y => "y",
            Self::Z => "z",
        })
    }
}

/// The sandwich products `i q i`, `i q j`, `i q k` for axes x, y, z.
pub fn pauli_action(axis: PauliAxis, q: Quaternion) -> Quaternion {
    Quaternion::I * q * axis.right_unit()
}

/// A 2x2 Pauli matrix or the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliMatrix {
    I,
    X,
    Y,
    Z,
}

impl PauliMatrix {
    pub const ALL: [Self; 4] = [Self::I, Self::X, Self::Y, Self::Z];

    pub fn matrix(self) -> Matrix2<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Self::I => Matrix2::new(one, o, o, one),
            Self::X => Matrix2::new(o, one, one, o),
            Self::Y => Matrix2::new(o, -i, i, o),
            Self::Z => Matrix2::new(one, o, o, -one),
        }
    }
}

impl From<PauliAxis> for PauliMatrix {
    fn from(a: PauliAxis) -> Self {
        match a {
            PauliAxis::X => Self::X,
            PauliAxis::Y => Self::Y,
            PauliAxis::Z => Self::Z,
        }
    }
}

impl fmt::Display for PauliMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::I => "I",
            Self::X => "sigma_x",
            Self::Y => "sigma_y",
            Self::Z => "sigma_z",
        })
    }
}

/// Which matrix a sandwich formula reproduces, and with what global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliClassification {
    pub axis: PauliAxis,
    pub target: PauliMatrix,
    /// `phi` in `pauli_action(axis, q) = exp(phi i) * embed(target * (a, b))`,
    /// in `(-pi, pi]`.
    pub phase: f64,
    pub max_deviation: f64,
}

/// Finds the Pauli matrix `P` and the phase `phi` (one pair for all
/// `samples`) such that the sandwich formula for `axis` equals `P` applied
/// to the complex pair, up to left multiplication by `exp(phi i)`.
pub fn classify_pauli_action(
    axis: PauliAxis,
    samples: &[Quaternion],
    tol: f64,
) -> Option<PauliClassification> {
    PauliMatrix::ALL.into_iter().find_map(|target| {
        let m = target.matrix();
        let mut phase: Option<Complex64> = None;
        let mut max_dev = 0.0f64;
        for &q in samples {
            let got = pauli_action(axis, q).to_pair().to_vector();
            let want = m * q.to_pair().to_vector();
            let ph = match phase {
                Some(p) => p,
                None => {
                    let overlap = want.dotc(&got);
                    if overlap.norm() <= TOL_ZERO {
                        if got.norm() <= tol * (1.0 + q.norm()) {
                            continue;
                        }
                        return None;
                    }
                    let p = overlap / overlap.norm();
                    phase = Some(p);
                    p
                }
            };
            let dev = (got - want * ph).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if dev > tol * (1.0 + q.norm()) {
                return None;
            }
            max_dev = max_dev.max(dev);
        }
        phase.map(|p| PauliClassification {
            axis,
            target,
            phase: p.arg(),
            max_deviation: max_dev,
        })
    })
}

/// `q^-1 i q`: projection of a qubit onto the unit sphere.
pub fn hopf_project(q: Quaternion) -> Result<ImaginaryVector, QuaternionError> {
    Ok((q.inverse()? * Quaternion::I * q).imag())
}

/// `(u, w)` with `M(q) = q u + i q w` for a complex 2x2 matrix `M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixDecomposition {
    pub u: Quaternion,
    pub w: Quaternion,
    /// Largest deviation from `M` over the four basis quaternions.
    pub residual: f64,
}

impl MatrixDecomposition {
    /// `q u + i q w`.
    pub fn apply(&self, q: Quaternion) -> Quaternion {
        compose(self.u, self.w, q)
    }

    /// The complex matrix represented by `(u, w)`.
    pub fn to_matrix(&self) -> Matrix2<Complex64> {
        compose_matrix(self.u, self.w)
    }
}

/// `q u + i q w`.
pub fn compose(u: Quaternion, w: Quaternion, q: Quaternion) -> Quaternion {
    q * u + Quaternion::I * q * w
}

/// The complex 2x2 matrix acting as `q -> q u + i q w`. Its columns are the
/// images of `|0> = 1` and `|1> = j`.
pub fn compose_matrix(u: Quaternion, w: Quaternion) -> Matrix2<Complex64> {
    let c0 = compose(u, w, Quaternion::ONE).to_pair();
    let c1 = compose(u, w, Quaternion::J).to_pair();
    Matrix2::new(c0.a, c1.a, c0.b, c1.b)
}

fn apply_complex(m: &Matrix2<Complex64>, q: Quaternion) -> Quaternion {
    ComplexPair::from_vector(&(m * q.to_pair().to_vector())).embed()
}

/// Solves for `(u, w)` such that `embed(M * extract(q)) = q u + i q w`.
///
/// The map is complex linear, so its action on `1` and `j` fixes it; those
/// two images give eight real equations in the eight unknown components.
pub fn decompose_matrix(m: &Matrix2<Complex64>) -> MatrixDecomposition {
    let mut a = SMatrix::<f64, 8, 8>::zeros();
    for k in 0..8 {
        let (u, w) = if k < 4 {
            (Quaternion::BASIS[k], Quaternion::ZERO)
        } else {
            (Quaternion::ZERO, Quaternion::BASIS[k - 4])
        };
        let col = stack(compose(u, w, Quaternion::ONE), compose(u, w, Quaternion::J));
        a.set_column(k, &col);
    }
    let rhs = stack(apply_complex(m, Quaternion::ONE), apply_complex(m, Quaternion::J));
    let sol = a
        .lu()
        .solve(&rhs)
        .expect("the real form of C (x) H -> M2(C) is invertible");
    let u = Quaternion::new(sol[0], sol[1], sol[2], sol[3]);
    let w = Quaternion::new(sol[4], sol[5], sol[6], sol[7]);
    let residual = Quaternion::BASIS
        .iter()
        .map(|&q| compose(u, w, q).max_abs_diff(apply_complex(m, q)))
        .fold(0.0, f64::max);
    MatrixDecomposition { u, w, residual }
}

fn stack(a: Quaternion, b: Quaternion) -> SVector<f64, 8> {
    let (a, b) = (a.to_array(), b.to_array());
    SVector::<f64, 8>::from_iterator(a.into_iter().chain(b))
}
