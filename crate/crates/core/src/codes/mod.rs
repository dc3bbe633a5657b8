//! Repetition-style codes, their error models, and ancilla-based correction.
//!
//! A [`Code`] is a list of orthonormal codewords in a tensor-product space.
//! [`kl_check`] evaluates the Knill–Laflamme conditions for an
//! [`ErrorSet`]; when they hold with orthogonal error images,
//! [`synthesize_correction`] builds the partial isometry
//! `E_p|w_l>|0_A> -> |w_l>|A_p>` and [`roundtrip`] runs the full
//! encode / corrupt / correct cycle.

mod correction;
mod demo;
mod errors;
mod kl;
pub mod reference;
pub mod simulate;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{inner, tensor_state, LinalgError, ScalarField, StateVector};
use crate::quaternion::Quaternion;

pub use correction::{
    roundtrip, synthesize_correction, AncillaLabels, CorrectionMap, IsometryPair,
    RoundtripOutcome, SynthesisOptions,
};
pub use demo::{
    count_effective_errors, effective_classes, phase_failure_demo, reduce_to_effective,
    EffectiveReduction, PhaseFailureReport,
};
pub use errors::{
    effective_error_basis, pauli_error, phase_error_pi, quarter_turn, right_unit_error, so2_error, su2_error,
    CombinedError, ErrorEntry, ErrorFamily, ErrorOp, ErrorSet,
};
pub use kl::{kl_check, KlReport, KlViolation};

/// Orthonormality tolerance for codewords.
pub const TOL_CODEWORDS: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("code has no codewords")]
    NoCodewords,
    #[error("codewords are not orthonormal (deviation {deviation:e})")]
    NotOrthonormal { deviation: f64 },
    #[error("error set over {errors} field cannot act on a {code} code")]
    FieldMismatch {
        code: ScalarField,
        errors: ScalarField,
    },
    #[error("error family {family:?} is not defined on the {field} field")]
    FamilyIncompatible {
        family: ErrorFamily,
        field: ScalarField,
    },
    #[error("Knill–Laflamme conditions fail ({violations} violations, max deviation {max_deviation:e})")]
    KlFailure {
        violations: usize,
        max_deviation: f64,
    },
    #[error("images of errors {p1} and {p2} are not orthogonal (overlap {overlap:e})")]
    NonOrthogonalImages { p1: usize, p2: usize, overlap: f64 },
    #[error("error {error} annihilates the code space")]
    DegenerateImage { error: usize },
    #[error("{needed} ancilla states needed, register has {available}")]
    InsufficientAncilla { needed: usize, available: usize },
    #[error("invalid ancilla labels: {0}")]
    InvalidLabels(String),
    #[error("expected {expected} coefficients, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("all coefficients are zero")]
    ZeroCombination,
    #[error("corrected state does not factor (residual {residual:e})")]
    Factorization { residual: f64 },
}

/// A scalar field, a site count and an ordered list of orthonormal
/// codewords (logical `|0>` first).
#[derive(Debug, Clone, PartialEq)]
pub struct Code {
    name: String,
    field: ScalarField,
    n_sites: usize,
    codewords: Vec<StateVector>,
}

impl Code {
    pub fn new(name: impl Into<String>, codewords: Vec<StateVector>) -> Result<Self, CodeError> {
        let first = codewords.first().ok_or(CodeError::NoCodewords)?;
        let (field, n_sites) = (first.field(), first.n_sites());
        let mut deviation = 0.0f64;
        for (a, u) in codewords.iter().enumerate() {
            if u.n_sites() != n_sites {
                return Err(LinalgError::DimensionMismatch {
                    expected: first.dim(),
                    found: u.dim(),
                }
                .into());
            }
            for (b, v) in codewords.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                deviation = deviation.max((inner(u, v)? - target).norm());
            }
        }
        if deviation > TOL_CODEWORDS {
            return Err(CodeError::NotOrthonormal { deviation });
        }
        Ok(Self {
            name: name.into(),
            field,
            n_sites,
            codewords,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.codewords[0].dim()
    }

    pub fn codewords(&self) -> &[StateVector] {
        &self.codewords
    }

    /// `sum_l c_l |w_l>`.
    pub fn encode(&self, logical: &[Complex64]) -> Result<StateVector, CodeError> {
        if logical.len() != self.codewords.len() {
            return Err(CodeError::CoefficientCount {
                expected: self.codewords.len(),
                found: logical.len(),
            });
        }
        let mut acc = StateVector::zeros(self.field, self.n_sites);
        for (c, w) in logical.iter().zip(&self.codewords) {
            acc = acc.add(&w.scale(*c)?)?;
        }
        Ok(acc)
    }
}

fn repeat(site: &StateVector, n: usize) -> StateVector {
    tensor_state(&vec![site.clone(); n]).expect("identical factors share a field")
}

fn repetition_code(name: &str, field: ScalarField) -> Code {
    let zero = StateVector::basis(field, 1, 0);
    let one = StateVector::basis(field, 1, 1);
    Code::new(name, vec![repeat(&zero, 3), repeat(&one, 3)]).expect("basis kets are orthonormal")
}

/// `|000>, |111>` over the reals.
pub fn build_r3_code() -> Code {
    repetition_code("r3", ScalarField::Real)
}

/// `|000>, |111>` over the complex numbers.
pub fn build_complex3_code() -> Code {
    repetition_code("complex3", ScalarField::Complex)
}

/// Unit repeated on every site of the second quaternionic codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum H3Second {
    I,
    #[default]
    J,
}

impl H3Second {
    pub fn unit(self) -> Quaternion {
        match self {
            Self::I => Quaternion::I,
            Self::J => Quaternion::J,
        }
    }
}

pub(crate) fn quaternion_site(q: Quaternion) -> StateVector {
    StateVector::site(ScalarField::QuaternionR4, &q.to_array()).expect("four real coordinates")
}

/// `1 (x) 1 (x) 1` and `u (x) u (x) u` in `R^64`, with `u` per `second`.
pub fn build_h3_code(second: H3Second) -> Code {
    let one = quaternion_site(Quaternion::ONE);
    let u = quaternion_site(second.unit());
    Code::new("h3", vec![repeat(&one, 3), repeat(&u, 3)]).expect("distinct units are orthonormal")
}

/// `(|000> +- |111>)/sqrt(2)`.
pub fn b3_states() -> (StateVector, StateVector) {
    let f = ScalarField::Complex;
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut plus = vec![Complex64::new(0.0, 0.0); 8];
    let mut minus = plus.clone();
    plus[0] = h;
    plus[7] = h;
    minus[0] = h;
    minus[7] = -h;
    (
        StateVector::new(f, 3, plus).expect("eight amplitudes"),
        StateVector::new(f, 3, minus).expect("eight amplitudes"),
    )
}

pub fn build_b3_code() -> Code {
    let (p, m) = b3_states();
    Code::new("b3", vec![p, m]).expect("B3 states are orthonormal")
}

/// Three blocks: `B3+ B3+ B3+` and `B3- B3- B3-`.
pub fn build_shor9_code() -> Code {
    let (p, m) = b3_states();
    Code::new("shor9", vec![repeat(&p, 3), repeat(&m, 3)]).expect("block products are orthonormal")
}
