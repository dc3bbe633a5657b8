//! Error operators, error sets and linear combinations of errors.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Code, CodeError};
use crate::linalg::{apply_site, LinalgError, LinearMap, ScalarField, SiteOperator, StateVector};
use crate::quaternion::{PauliAxis, PauliMatrix, Quaternion, UnitQuaternion};

/// An error acting on the full code space.
#[derive(Debug, Clone, PartialEq)]
pub enum ErrorOp {
    Identity,
    Site(SiteOperator),
    Full(LinearMap),
}

impl ErrorOp {
    pub fn apply(&self, s: &StateVector) -> Result<StateVector, LinalgError> {
        match self {
            Self::Identity => Ok(s.clone()),
            Self::Site(op) => apply_site(op, s),
            Self::Full(m) => m.apply(s),
        }
    }

    fn field(&self) -> Option<ScalarField> {
        match self {
            Self::Identity => None,
            Self::Site(op) => Some(op.field()),
            Self::Full(m) => Some(m.field()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorEntry {
    pub label: String,
    pub op: ErrorOp,
}

/// Ordered error operators over one field; entry 0 is always the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorSet {
    field: ScalarField,
    entries: Vec<ErrorEntry>,
}

impl ErrorSet {
    pub fn new(field: ScalarField) -> Self {
        Self {
            field,
            entries: vec![ErrorEntry {
                label: "I".into(),
                op: ErrorOp::Identity,
            }],
        }
    }

    pub fn push(&mut self, label: impl Into<String>, op: ErrorOp) -> Result<(), CodeError> {
        if let Some(f) = op.field() {
            if f != self.field {
                return Err(CodeError::FieldMismatch {
                    code: self.field,
                    errors: f,
                });
            }
        }
        self.entries.push(ErrorEntry {
            label: label.into(),
            op,
        });
        Ok(())
    }

    pub fn with(mut self, label: impl Into<String>, op: SiteOperator) -> Result<Self, CodeError> {
        self.push(label, ErrorOp::Site(op))?;
        Ok(self)
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[ErrorEntry] {
        &self.entries
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.label.as_str())
    }
}

fn site_op(site: usize, m: LinearMap) -> SiteOperator {
    SiteOperator::new(site, m).expect("site-sized square matrix")
}

/// `|0> -> a|0> + b|1>`, `|1> -> -b|0> + a|1>` with `a = cos t`, `b = sin t`.
pub fn so2_error(theta: f64, site: usize, field: ScalarField) -> Result<SiteOperator, CodeError> {
    if field == ScalarField::QuaternionR4 {
        return Err(CodeError::FamilyIncompatible {
            family: ErrorFamily::So2,
            field,
        });
    }
    let (a, b) = (theta.cos(), theta.sin());
    Ok(site_op(
        site,
        LinearMap::from_real_rows(field, 2, 2, &[a, -b, b, a])?,
    ))
}

/// The exact quarter turn `G = [[0, -1], [1, 0]]`.
pub fn quarter_turn(site: usize, field: ScalarField) -> Result<SiteOperator, CodeError> {
    if field == ScalarField::QuaternionR4 {
        return Err(CodeError::FamilyIncompatible {
            family: ErrorFamily::So2,
            field,
        });
    }
    Ok(site_op(
        site,
        LinearMap::from_real_rows(field, 2, 2, &[0.0, -1.0, 1.0, 0.0])?,
    ))
}

/// `diag(i, -i)` on a complex site.
pub fn phase_error_pi(site: usize) -> SiteOperator {
    let i = Complex64::new(0.0, 1.0);
    let z = Complex64::new(0.0, 0.0);
    let m = DMatrix::from_row_slice(2, 2, &[i, z, z, -i]);
    site_op(
        site,
        LinearMap::new(ScalarField::Complex, m).expect("complex field"),
    )
}

/// The real 4x4 matrix of `q -> q * unit` on a quaternionic site.
pub fn right_unit_error(unit: Quaternion, site: usize) -> SiteOperator {
    let m = unit.right_mul_matrix();
    site_op(
        site,
        LinearMap::from_real_fn(ScalarField::QuaternionR4, 4, 4, |r, c| m[(r, c)]),
    )
}

/// `q -> q * conj(u)` on a quaternionic site.
pub fn su2_error(u: UnitQuaternion, site: usize) -> SiteOperator {
    right_unit_error(u.get().conj(), site)
}

/// The Pauli matrix for `axis` on one qubit. Over the reals only X and Z exist.
pub fn pauli_error(axis: PauliAxis, site: usize, field: ScalarField) -> Result<SiteOperator, CodeError> {
    let incompatible = match field {
        ScalarField::Complex => false,
        ScalarField::Real => axis == PauliAxis::Y,
        ScalarField::QuaternionR4 => true,
    };
    if incompatible {
        return Err(CodeError::FamilyIncompatible {
            family: ErrorFamily::PauliPerSite,
            field,
        });
    }
    let m = PauliMatrix::from(axis).matrix();
    let m = DMatrix::from_fn(2, 2, |r, c| m[(r, c)]);
    Ok(site_op(site, LinearMap::new(field, m)?))
}

/// Families of single-site errors with a finite generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorFamily {
    /// Plane rotations; spanned by `I` and the quarter turn `G` per site.
    So2,
    /// Right multiplication by unit quaternions; spanned by `I, *i, *j, *k`.
    Su2,
    /// Spanned by `I, X, Y, Z` per site.
    PauliPerSite,
}

/// The discrete error set whose span contains every error of `family` on
/// any single site of `code`. Sites are listed in order; within a site the
/// generators follow the family's listed order.
pub fn effective_error_basis(code: &Code, family: ErrorFamily) -> Result<ErrorSet, CodeError> {
    let field = code.field();
    let mut set = ErrorSet::new(field);
    let incompatible = || CodeError::FamilyIncompatible { family, field };
    for site in 0..code.n_sites() {
        match family {
            ErrorFamily::So2 => {
                set.push(format!("G@{site}"), ErrorOp::Site(quarter_turn(site, field)?))?;
            }
            ErrorFamily::Su2 => {
                if field != ScalarField::QuaternionR4 {
                    return Err(incompatible());
                }
                for (name, unit) in [("i", Quaternion::I), ("j", Quaternion::J), ("k", Quaternion::K)] {
                    set.push(format!("R{name}@{site}"), ErrorOp::Site(right_unit_error(unit, site)))?;
                }
            }
            ErrorFamily::PauliPerSite => {
                if field != ScalarField::Complex {
                    return Err(incompatible());
                }
                for axis in PauliAxis::ALL {
                    let name = axis.to_string().to_uppercase();
                    set.push(format!("{name}@{site}"), ErrorOp::Site(pauli_error(axis, site, field)?))?;
                }
            }
        }
    }
    Ok(set)
}

/// `sum_p e_p E_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedError {
    field: ScalarField,
    terms: Vec<(Complex64, ErrorEntry)>,
}

impl CombinedError {
    /// Pairs `coefficients` with the entries of `set` in order.
    pub fn from_set(set: &ErrorSet, coefficients: &[Complex64]) -> Result<Self, CodeError> {
        if coefficients.len() != set.len() {
            return Err(CodeError::CoefficientCount {
                expected: set.len(),
                found: coefficients.len(),
            });
        }
        Self::from_terms(
            set.field(),
            coefficients.iter().copied().zip(set.entries().iter().cloned()).collect(),
        )
    }

    pub fn from_terms(field: ScalarField, terms: Vec<(Complex64, ErrorEntry)>) -> Result<Self, CodeError> {
        if terms.iter().all(|(c, _)| c.norm() == 0.0) {
            return Err(CodeError::ZeroCombination);
        }
        if field.is_real() {
            let max_imag = terms.iter().map(|(c, _)| c.im.abs()).fold(0.0, f64::max);
            if max_imag != 0.0 {
                return Err(LinalgError::NotRealValued { field, max_imag }.into());
            }
        }
        Ok(Self { field, terms })
    }

    /// A single rotation by `theta` on `site`: `cos(t) I + sin(t) G`.
    pub fn so2_rotation(theta: f64, site: usize, field: ScalarField) -> Result<Self, CodeError> {
        let g = quarter_turn(site, field)?;
        Self::from_terms(
            field,
            vec![
                (Complex64::new(theta.cos(), 0.0), identity_entry()),
                (
                    Complex64::new(theta.sin(), 0.0),
                    ErrorEntry {
                        label: format!("G@{site}"),
                        op: ErrorOp::Site(g),
                    },
                ),
            ],
        )
    }

    /// `q -> q conj(u)` on `site`, written over `I, *i, *j, *k`.
    pub fn su2_rotation(u: UnitQuaternion, site: usize) -> Self {
        let [u0, u1, u2, u3] = u.get().to_array();
        let term = |c: f64, name: &str, unit: Quaternion| {
            (
                Complex64::new(c, 0.0),
                ErrorEntry {
                    label: format!("R{name}@{site}"),
                    op: ErrorOp::Site(right_unit_error(unit, site)),
                },
            )
        };
        Self {
            field: ScalarField::QuaternionR4,
            terms: vec![
                (Complex64::new(u0, 0.0), identity_entry()),
                term(-u1, "i", Quaternion::I),
                term(-u2, "j", Quaternion::J),
                term(-u3, "k", Quaternion::K),
            ],
        }
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn terms(&self) -> &[(Complex64, ErrorEntry)] {
        &self.terms
    }

    pub fn apply(&self, s: &StateVector) -> Result<StateVector, LinalgError> {
        let mut acc = StateVector::zeros(s.field(), s.n_sites());
        for (c, e) in &self.terms {
            if c.norm() == 0.0 {
                continue;
            }
            acc = acc.add(&e.op.apply(s)?.scaled_unchecked(*c))?;
        }
        Ok(acc)
    }
}

fn identity_entry() -> ErrorEntry {
    ErrorEntry {
        label: "I".into(),
        op: ErrorOp::Identity,
    }
}
