//! Dense tensor-product states and operators over real, complex and
//! quaternionic sites.
//!
//! Amplitudes are stored as `Complex64` for every field; real and
//! quaternionic states keep a zero imaginary part, which constructors check.
//! A quaternionic site is represented by its four real coordinates in the
//! basis `1, i, j, k`, and states of several such sites live in the real
//! tensor product `R^(4^n)` with the Euclidean inner product.
//!
//! Site order is big-endian: site 0 is the most significant index.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::tolerance::TOL_ZERO;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarField {
    Real,
    Complex,
    /// Quaternionic sites as real 4-vectors.
    QuaternionR4,
}

impl ScalarField {
    pub const fn site_dim(self) -> usize {
        match self {
            Self::Real | Self::Complex => 2,
            Self::QuaternionR4 => 4,
        }
    }

    /// Whether amplitudes must be real.
    pub const fn is_real(self) -> bool {
        !matches!(self, Self::Complex)
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Real => "real",
            Self::Complex => "complex",
            Self::QuaternionR4 => "quaternion",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: ScalarField,
        found: ScalarField,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("site {site} out of range for {n_sites} sites")]
    SiteOutOfRange { site: usize, n_sites: usize },
    #[error("{field} field requires real entries (max |imag| = {max_imag:e})")]
    NotRealValued { field: ScalarField, max_imag: f64 },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector {index} is linearly dependent on its predecessors")]
    RankDeficient { index: usize },
    #[error("empty factor list")]
    Empty,
}

fn max_imag<'a>(it: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    it.into_iter().map(|c| c.im.abs()).fold(0.0, f64::max)
}

fn check_real<'a>(
    field: ScalarField,
    it: impl IntoIterator<Item = &'a Complex64>,
) -> Result<(), LinalgError> {
    if field.is_real() {
        let m = max_imag(it);
        if m != 0.0 {
            return Err(LinalgError::NotRealValued { field, max_imag: m });
        }
    }
    Ok(())
}

fn check_field(expected: ScalarField, found: ScalarField) -> Result<(), LinalgError> {
    if expected != found {
        return Err(LinalgError::FieldMismatch { expected, found });
    }
    Ok(())
}

/// Amplitudes of an `n_sites`-fold tensor product state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    field: ScalarField,
    n_sites: usize,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(
        field: ScalarField,
        n_sites: usize,
        amplitudes: Vec<Complex64>,
    ) -> Result<Self, LinalgError> {
        let dim = field.site_dim().pow(n_sites as u32);
        if amplitudes.len() != dim {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        check_real(field, &amplitudes)?;
        Ok(Self {
            field,
            n_sites,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    pub fn from_real(field: ScalarField, n_sites: usize, amps: &[f64]) -> Result<Self, LinalgError> {
        Self::new(field, n_sites, amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn zeros(field: ScalarField, n_sites: usize) -> Self {
        let dim = field.site_dim().pow(n_sites as u32);
        Self {
            field,
            n_sites,
            amplitudes: DVector::from_element(dim, ZERO),
        }
    }

    /// Computational basis state `index` (big-endian over sites).
    ///
    /// Panics if `index` is outside the space.
    pub fn basis(field: ScalarField, n_sites: usize, index: usize) -> Self {
        let mut s = Self::zeros(field, n_sites);
        s.amplitudes[index] = ONE;
        s
    }

    /// A single-site state with real coordinates `coords`.
    pub fn site(field: ScalarField, coords: &[f64]) -> Result<Self, LinalgError> {
        Self::from_real(field, 1, coords)
    }

    pub(crate) fn from_parts_unchecked(
        field: ScalarField,
        n_sites: usize,
        amplitudes: DVector<Complex64>,
    ) -> Self {
        debug_assert_eq!(amplitudes.len(), field.site_dim().pow(n_sites as u32));
        Self {
            field,
            n_sites,
            amplitudes,
        }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn site_dim(&self) -> usize {
        self.field.site_dim()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `None` when the norm is at or below `TOL_ZERO`.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > TOL_ZERO).then(|| self.scaled_unchecked(Complex64::new(1.0 / n, 0.0)))
    }

    /// Multiplies by a scalar; real fields reject complex scalars.
    pub fn scale(&self, c: Complex64) -> Result<Self, LinalgError> {
        if self.field.is_real() && c.im != 0.0 {
            return Err(LinalgError::NotRealValued {
                field: self.field,
                max_imag: c.im.abs(),
            });
        }
        Ok(self.scaled_unchecked(c))
    }

    pub(crate) fn scaled_unchecked(&self, c: Complex64) -> Self {
        Self {
            field: self.field,
            n_sites: self.n_sites,
            amplitudes: &self.amplitudes * c,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), LinalgError> {
        check_field(self.field, other.field)?;
        if self.dim() != other.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        Ok(Self {
            amplitudes: &self.amplitudes + &other.amplitudes,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_compatible(other)?;
        Ok(Self {
            amplitudes: &self.amplitudes - &other.amplitudes,
            ..self.clone()
        })
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, LinalgError> {
        self.check_compatible(other)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Kronecker product `self (x) other`.
    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        check_field(self.field, other.field)?;
        let (m, n) = (self.dim(), other.dim());
        let mut amps = DVector::from_element(m * n, ZERO);
        for (i, a) in self.amplitudes.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            for (j, b) in other.amplitudes.iter().enumerate() {
                amps[i * n + j] = a * b;
            }
        }
        Ok(Self {
            field: self.field,
            n_sites: self.n_sites + other.n_sites,
            amplitudes: amps,
        })
    }
}

/// Kronecker product of states, leftmost factor slowest-varying.
pub fn tensor_state(factors: &[StateVector]) -> Result<StateVector, LinalgError> {
    let (first, rest) = factors.split_first().ok_or(LinalgError::Empty)?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.tensor(f))
}

/// Hermitian inner product for complex states, Euclidean otherwise.
pub fn inner(u: &StateVector, v: &StateVector) -> Result<Complex64, LinalgError> {
    u.check_compatible(v)?;
    Ok(inner_unchecked(u.field, u.amplitudes.as_slice(), v.amplitudes.as_slice()))
}

pub(crate) fn inner_unchecked(field: ScalarField, u: &[Complex64], v: &[Complex64]) -> Complex64 {
    if field.is_real() {
        let re: f64 = u.iter().zip(v).map(|(a, b)| a.re * b.re).sum();
        Complex64::new(re, 0.0)
    } else {
        u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
    }
}

/// A dense matrix over the base scalars of `field`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMap {
    field: ScalarField,
    matrix: DMatrix<Complex64>,
}

impl LinearMap {
    pub fn new(field: ScalarField, matrix: DMatrix<Complex64>) -> Result<Self, LinalgError> {
        check_real(field, matrix.iter())?;
        Ok(Self { field, matrix })
    }

    /// Real matrix given in row-major order.
    pub fn from_real_rows(
        field: ScalarField,
        rows: usize,
        cols: usize,
        entries: &[f64],
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        let m = DMatrix::from_row_iterator(
            rows,
            cols,
            entries.iter().map(|&e| Complex64::new(e, 0.0)),
        );
        Ok(Self { field, matrix: m })
    }

    /// Real matrix with entries `f(row, col)`.
    pub fn from_real_fn(
        field: ScalarField,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> f64,
    ) -> Self {
        Self {
            field,
            matrix: DMatrix::from_fn(rows, cols, |r, c| Complex64::new(f(r, c), 0.0)),
        }
    }

    pub fn identity(field: ScalarField, dim: usize) -> Self {
        Self {
            field,
            matrix: DMatrix::identity(dim, dim),
        }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn adjoint(&self) -> Self {
        Self {
            field: self.field,
            matrix: self.matrix.adjoint(),
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Result<Self, LinalgError> {
        check_field(self.field, other.field)?;
        if self.cols() != other.rows() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols(),
                found: other.rows(),
            });
        }
        Ok(Self {
            field: self.field,
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Applies a square map to a state of matching dimension.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector, LinalgError> {
        check_field(self.field, s.field)?;
        if self.rows() != self.cols() {
            return Err(LinalgError::NotSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        if self.cols() != s.dim() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols(),
                found: s.dim(),
            });
        }
        Ok(StateVector::from_parts_unchecked(
            s.field,
            s.n_sites,
            &self.matrix * &s.amplitudes,
        ))
    }
}

/// Kronecker product of maps, leftmost factor slowest-varying.
pub fn tensor_op(factors: &[LinearMap]) -> Result<LinearMap, LinalgError> {
    let (first, rest) = factors.split_first().ok_or(LinalgError::Empty)?;
    rest.iter().try_fold(first.clone(), |acc, f| {
        check_field(acc.field, f.field)?;
        Ok(LinearMap {
            field: acc.field,
            matrix: acc.matrix.kronecker(&f.matrix),
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryReport {
    pub is_isometry: bool,
    /// `max |(M^H M - I)_ij|`.
    pub max_deviation: f64,
}

/// Tests `M^H M = I` (`M^T M = I` for real fields) within `tol`.
pub fn is_isometry(m: &LinearMap, tol: f64) -> IsometryReport {
    let gram = m.matrix.adjoint() * &m.matrix;
    let mut dev = 0.0f64;
    for ((r, c), g) in gram.iter().enumerate().map(|(k, g)| ((k % gram.nrows(), k / gram.nrows()), g)) {
        let target = if r == c { ONE } else { ZERO };
        dev = dev.max((g - target).norm());
    }
    IsometryReport {
        is_isometry: m.rows() == m.cols() && dev <= tol,
        max_deviation: dev,
    }
}

/// A square operator acting on one site of a tensor product.
#[derive(Debug, Clone, PartialEq)]
pub struct SiteOperator {
    site: usize,
    op: LinearMap,
}

impl SiteOperator {
    pub fn new(site: usize, op: LinearMap) -> Result<Self, LinalgError> {
        if op.rows() != op.cols() {
            return Err(LinalgError::NotSquare {
                rows: op.rows(),
                cols: op.cols(),
            });
        }
        let d = op.field.site_dim();
        if op.rows() != d {
            return Err(LinalgError::DimensionMismatch {
                expected: d,
                found: op.rows(),
            });
        }
        Ok(Self { site, op })
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn op(&self) -> &LinearMap {
        &self.op
    }

    pub fn field(&self) -> ScalarField {
        self.op.field
    }

    /// `I (x) ... (x) op (x) ... (x) I` on `n_sites` sites.
    pub fn embed(&self, n_sites: usize) -> Result<LinearMap, LinalgError> {
        if self.site >= n_sites {
            return Err(LinalgError::SiteOutOfRange {
                site: self.site,
                n_sites,
            });
        }
        let d = self.op.field.site_dim();
        let factors: Vec<LinearMap> = (0..n_sites)
            .map(|k| {
                if k == self.site {
                    self.op.clone()
                } else {
                    LinearMap::identity(self.op.field, d)
                }
            })
            .collect();
        tensor_op(&factors)
    }
}

/// Applies a site-local operator without forming the full Kronecker product.
pub fn apply_site(op: &SiteOperator, s: &StateVector) -> Result<StateVector, LinalgError> {
    check_field(op.field(), s.field)?;
    if op.site >= s.n_sites {
        return Err(LinalgError::SiteOutOfRange {
            site: op.site,
            n_sites: s.n_sites,
        });
    }
    let d = s.site_dim();
    let lo = d.pow((s.n_sites - 1 - op.site) as u32);
    let hi = s.dim() / (lo * d);
    let m = op.op.matrix();
    let src = s.amplitudes.as_slice();
    let mut out = DVector::from_element(s.dim(), ZERO);
    for h in 0..hi {
        for j in 0..d {
            for k in 0..d {
                let c = m[(j, k)];
                if c == ZERO {
                    continue;
                }
                let (dst_base, src_base) = ((h * d + j) * lo, (h * d + k) * lo);
                for l in 0..lo {
                    out[dst_base + l] += c * src[src_base + l];
                }
            }
        }
    }
    Ok(StateVector::from_parts_unchecked(s.field, s.n_sites, out))
}

/// Removes from `v` its components along the orthonormal `basis`, twice.
fn orthogonalize(field: ScalarField, basis: &[DVector<Complex64>], v: &mut DVector<Complex64>) {
    for _ in 0..2 {
        for b in basis {
            let c = inner_unchecked(field, b.as_slice(), v.as_slice());
            if c != ZERO {
                v.axpy(-c, b, ONE);
            }
        }
    }
}

/// Extends `partial` to an orthonormal basis of the whole space.
///
/// The first `partial.len()` output vectors span the same subspace as the
/// input (Gram–Schmidt with re-orthogonalization); the rest are drawn from
/// the computational basis. An input vector whose residual after projection
/// is at most `tol_rank` times its norm is reported as dependent.
pub fn complete_orthonormal(
    partial: &[StateVector],
    tol_rank: f64,
) -> Result<Vec<StateVector>, LinalgError> {
    let first = partial.first().ok_or(LinalgError::Empty)?;
    let (field, n_sites, dim) = (first.field, first.n_sites, first.dim());
    let mut basis: Vec<DVector<Complex64>> = Vec::with_capacity(dim);
    for (index, p) in partial.iter().enumerate() {
        first.check_compatible(p)?;
        let scale = p.norm();
        let mut v = p.amplitudes.clone();
        orthogonalize(field, &basis, &mut v);
        let n = v.norm();
        if scale <= TOL_ZERO || n <= tol_rank * scale {
            return Err(LinalgError::RankDeficient { index });
        }
        basis.push(v / Complex64::new(n, 0.0));
    }
    for j in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut v = DVector::from_element(dim, ZERO);
        v[j] = ONE;
        orthogonalize(field, &basis, &mut v);
        let n = v.norm();
        // Every candidate with a non-negligible residual is safe after two passes.
        if n > 1e-6 {
            basis.push(v / Complex64::new(n, 0.0));
        }
    }
    debug_assert_eq!(basis.len(), dim);
    Ok(basis
        .into_iter()
        .map(|a| StateVector::from_parts_unchecked(field, n_sites, a))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn tensor_basis_examples() {
        let z = StateVector::basis(ScalarField::Real, 1, 0);
        let s = tensor_state(&[z.clone(), z.clone(), z]).unwrap();
        assert_eq!(s, StateVector::basis(ScalarField::Real, 3, 0));

        let one = StateVector::site(ScalarField::QuaternionR4, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let s = tensor_state(&[one.clone(), one.clone(), one]).unwrap();
        assert_eq!(s.dim(), 64);
        assert_eq!(s, StateVector::basis(ScalarField::QuaternionR4, 3, 0));
    }

    #[test]
    fn tensor_big_endian() {
        let (a, b) = (c(0.6, 0.1), c(-0.3, 0.7));
        let left = StateVector::new(ScalarField::Complex, 1, vec![a, b]).unwrap();
        let ket1 = StateVector::basis(ScalarField::Complex, 1, 1);
        let s = left.tensor(&ket1).unwrap();
        let zero = c(0.0, 0.0);
        assert_eq!(s.amplitudes().as_slice(), &[zero, a, zero, b]);
    }

    #[test]
    fn mixed_fields_rejected() {
        let r = StateVector::basis(ScalarField::Real, 1, 0);
        let z = StateVector::basis(ScalarField::Complex, 1, 0);
        assert!(matches!(
            tensor_state(&[r.clone(), z.clone()]),
            Err(LinalgError::FieldMismatch { .. })
        ));
        assert!(inner(&r, &z).is_err());
        assert!(tensor_state(&[]).is_err());
    }

    #[test]
    fn real_field_rejects_imaginary_amplitudes() {
        let e = StateVector::new(ScalarField::Real, 1, vec![c(0.0, 1.0), c(0.0, 0.0)]);
        assert!(matches!(e, Err(LinalgError::NotRealValued { .. })));
        let r = StateVector::basis(ScalarField::Real, 1, 0);
        assert!(r.scale(c(0.0, 1.0)).is_err());
        assert!(StateVector::new(ScalarField::Real, 2, vec![c(1.0, 0.0); 3]).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let s0 = StateVector::basis(ScalarField::Real, 3, 0);
        let s7 = StateVector::basis(ScalarField::Real, 3, 7);
        assert_eq!(inner(&s0, &s0).unwrap(), c(1.0, 0.0));
        assert_eq!(inner(&s0, &s7).unwrap(), c(0.0, 0.0));

        let e_pi = LinearMap::new(
            ScalarField::Complex,
            DMatrix::from_row_slice(2, 2, &[c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)]),
        )
        .unwrap();
        let zero = StateVector::basis(ScalarField::Complex, 1, 0);
        let img = e_pi.apply(&zero).unwrap();
        assert_eq!(inner(&zero, &img).unwrap(), c(0.0, 1.0));
        // Conjugate-linear in the first argument.
        let iz = zero.scale(c(0.0, 1.0)).unwrap();
        assert_eq!(inner(&iz, &zero).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn so2_on_first_site_of_repetition_state() {
        let theta: f64 = 0.37;
        let (al, be) = (theta.cos(), theta.sin());
        let rot = LinearMap::from_real_rows(ScalarField::Real, 2, 2, &[al, -be, be, al]).unwrap();
        let op = SiteOperator::new(0, rot).unwrap();
        let (a, b) = (0.8, 0.6);
        let mut amps = vec![0.0; 8];
        amps[0] = a;
        amps[7] = b;
        let s = StateVector::from_real(ScalarField::Real, 3, &amps).unwrap();
        let out = apply_site(&op, &s).unwrap();
        let mut want = vec![0.0; 8];
        want[0b000] = a * al;
        want[0b100] = a * be;
        want[0b011] = -b * be;
        want[0b111] = b * al;
        let want = StateVector::from_real(ScalarField::Real, 3, &want).unwrap();
        assert!(out.max_abs_diff(&want).unwrap() < 1e-15);

        let id = SiteOperator::new(2, LinearMap::identity(ScalarField::Real, 2)).unwrap();
        assert_eq!(apply_site(&id, &s).unwrap(), s);
        let oob = SiteOperator::new(3, LinearMap::identity(ScalarField::Real, 2)).unwrap();
        assert!(matches!(apply_site(&oob, &s), Err(LinalgError::SiteOutOfRange { .. })));
    }

    #[test]
    fn right_multiplication_on_quaternion_site() {
        use crate::quaternion::Quaternion;
        let m = Quaternion::I.right_mul_matrix();
        let op = LinearMap::from_real_rows(ScalarField::QuaternionR4, 4, 4, m.transpose().as_slice())
            .unwrap();
        let op = SiteOperator::new(0, op).unwrap();
        let one = StateVector::site(ScalarField::QuaternionR4, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let i = StateVector::site(ScalarField::QuaternionR4, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let s = one.tensor(&one).unwrap();
        let out = apply_site(&op, &s).unwrap();
        assert_eq!(out, i.tensor(&one).unwrap());
    }

    #[test]
    fn completion_examples() {
        let e0 = StateVector::basis(ScalarField::Real, 1, 0);
        let b = complete_orthonormal(std::slice::from_ref(&e0), 1e-10).unwrap();
        assert_eq!(b, vec![e0.clone(), StateVector::basis(ScalarField::Real, 1, 1)]);

        let d = StateVector::from_real(ScalarField::Real, 1, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2]).unwrap();
        let b = complete_orthonormal(&[d], 1e-10).unwrap();
        let second = b[1].amplitudes();
        assert!((second[0].re.abs() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((second[0].re + second[1].re).abs() < 1e-15);

        let near = StateVector::from_real(ScalarField::Real, 1, &[1.0, 1e-15]).unwrap();
        assert_eq!(
            complete_orthonormal(&[e0, near], 1e-10),
            Err(LinalgError::RankDeficient { index: 1 })
        );
    }

    #[test]
    fn isometry_examples() {
        let id = LinearMap::identity(ScalarField::Real, 3);
        let r = is_isometry(&id, 1e-10);
        assert!(r.is_isometry);
        assert_eq!(r.max_deviation, 0.0);
        let d = LinearMap::from_real_rows(ScalarField::Real, 2, 2, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        assert!(!is_isometry(&d, 1e-10).is_isometry);
    }

    #[test]
    fn site_operator_shape_checked() {
        let bad = LinearMap::identity(ScalarField::QuaternionR4, 2);
        assert!(SiteOperator::new(0, bad).is_err());
    }
}
