use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{Code, CodeError, ErrorSet};
use crate::linalg::{inner_unchecked, StateVector};

/// A failed Knill–Laflamme condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KlViolation {
    /// `<w_l1| E_p1^H E_p2 |w_l2> != 0` for `l1 != l2`.
    CrossTerm {
        p1: usize,
        l1: usize,
        p2: usize,
        l2: usize,
        value: Complex64,
    },
    /// `<w_m| E_p1^H E_p2 |w_m> != <w_n| E_p1^H E_p2 |w_n>`.
    DiagonalMismatch {
        p1: usize,
        p2: usize,
        m: usize,
        n: usize,
        value_m: Complex64,
        value_n: Complex64,
    },
}

impl KlViolation {
    pub fn deviation(&self) -> f64 {
        match *self {
            Self::CrossTerm { value, .. } => value.norm(),
            Self::DiagonalMismatch {
                value_m, value_n, ..
            } => (value_m - value_n).norm(),
        }
    }
}

/// Every inner product `<E_p1 w_l1 | E_p2 w_l2>` with the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct KlReport {
    n_errors: usize,
    n_codewords: usize,
    entries: Vec<Complex64>,
    pub tol: f64,
    pub violations: Vec<KlViolation>,
    /// Largest `|entry|` over pairs with `l1 != l2`.
    pub max_cross_term: f64,
    /// Largest disagreement between diagonal blocks.
    pub max_diagonal_spread: f64,
    /// `<A_p1|A_p2>` (the common diagonal block) when the conditions hold.
    pub ancilla_gram: Option<DMatrix<Complex64>>,
}

impl KlReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn n_errors(&self) -> usize {
        self.n_errors
    }

    pub fn n_codewords(&self) -> usize {
        self.n_codewords
    }

    /// `<w_l1| E_p1^H E_p2 |w_l2>`.
    pub fn entry(&self, p1: usize, l1: usize, p2: usize, l2: usize) -> Complex64 {
        let n = self.n_codewords;
        let row = p1 * n + l1;
        let col = p2 * n + l2;
        self.entries[row * self.n_errors * n + col]
    }

    pub fn max_deviation(&self) -> f64 {
        self.max_cross_term.max(self.max_diagonal_spread)
    }

    /// Largest `|<A_p1|A_p2>|` with `p1 != p2`; zero for a diagonal Gram matrix.
    pub fn max_gram_off_diagonal(&self) -> Option<f64> {
        self.ancilla_gram.as_ref().map(|g| {
            let mut m = 0.0f64;
            for r in 0..g.nrows() {
                for c in 0..g.ncols() {
                    if r != c {
                        m = m.max(g[(r, c)].norm());
                    }
                }
            }
            m
        })
    }
}

/// Images `E_p |w_l>`, indexed `[p][l]`.
pub(crate) fn error_images(
    code: &Code,
    errors: &ErrorSet,
) -> Result<Vec<Vec<StateVector>>, CodeError> {
    if errors.field() != code.field() {
        return Err(CodeError::FieldMismatch {
            code: code.field(),
            errors: errors.field(),
        });
    }
    errors
        .entries()
        .iter()
        .map(|e| {
            code.codewords()
                .iter()
                .map(|w| e.op.apply(w).map_err(CodeError::from))
                .collect()
        })
        .collect()
}

/// Evaluates both families of Knill–Laflamme conditions, including the
/// identity entry of `errors`.
///
/// Failure is a verdict in the report; `Err` means the operators cannot
/// act on the code at all.
pub fn kl_check(code: &Code, errors: &ErrorSet, tol: f64) -> Result<KlReport, CodeError> {
    let images = error_images(code, errors)?;
    let (np, nl) = (errors.len(), code.codewords().len());
    let field = code.field();
    let size = np * nl;
    let flat: Vec<&StateVector> = images.iter().flatten().collect();
    let mut entries = vec![Complex64::new(0.0, 0.0); size * size];
    for r in 0..size {
        for c in r..size {
            let v = inner_unchecked(
                field,
                flat[r].amplitudes().as_slice(),
                flat[c].amplitudes().as_slice(),
            );
            entries[r * size + c] = v;
            entries[c * size + r] = v.conj();
        }
    }
    let mut report = KlReport {
        n_errors: np,
        n_codewords: nl,
        entries,
        tol,
        violations: Vec::new(),
        max_cross_term: 0.0,
        max_diagonal_spread: 0.0,
        ancilla_gram: None,
    };
    let mut violations = Vec::new();
    for p1 in 0..np {
        for p2 in 0..np {
            for l1 in 0..nl {
                for l2 in 0..nl {
                    if l1 == l2 {
                        continue;
                    }
                    let value = report.entry(p1, l1, p2, l2);
                    report.max_cross_term = report.max_cross_term.max(value.norm());
                    if value.norm() > tol {
                        violations.push(KlViolation::CrossTerm {
                            p1,
                            l1,
                            p2,
                            l2,
                            value,
                        });
                    }
                }
            }
            let value_m = report.entry(p1, 0, p2, 0);
            for n in 1..nl {
                let value_n = report.entry(p1, n, p2, n);
                let spread = (value_m - value_n).norm();
                report.max_diagonal_spread = report.max_diagonal_spread.max(spread);
                if spread > tol {
                    violations.push(KlViolation::DiagonalMismatch {
                        p1,
                        p2,
                        m: 0,
                        n,
                        value_m,
                        value_n,
                    });
                }
            }
        }
    }
    report.violations = violations;
    if report.passes() {
        report.ancilla_gram = Some(DMatrix::from_fn(np, np, |a, b| report.entry(a, 0, b, 0)));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{
        build_complex3_code, build_h3_code, build_r3_code, effective_error_basis, phase_error_pi,
        ErrorFamily, H3Second,
    };
    use crate::linalg::ScalarField;

    /// Direct evaluation of `<w| E1^T E2 |w'>` through full Kronecker matrices.
    fn brute_entry(code: &Code, set: &ErrorSet, p1: usize, l1: usize, p2: usize, l2: usize) -> Complex64 {
        let full = |p: usize| match &set.entries()[p].op {
            crate::codes::ErrorOp::Identity => nalgebra::DMatrix::identity(code.dim(), code.dim()),
            crate::codes::ErrorOp::Site(s) => s.embed(code.n_sites()).unwrap().matrix().clone(),
            crate::codes::ErrorOp::Full(m) => m.matrix().clone(),
        };
        let m = full(p1).adjoint() * full(p2);
        let w1 = code.codewords()[l1].amplitudes();
        let w2 = code.codewords()[l2].amplitudes();
        w1.dotc(&(m * w2))
    }

    #[test]
    fn r3_so2_passes_and_matches_brute_force() {
        let code = build_r3_code();
        let set = effective_error_basis(&code, ErrorFamily::So2).unwrap();
        let r = kl_check(&code, &set, 1e-12).unwrap();
        assert!(r.passes());
        for p1 in 0..4 {
            for p2 in 0..4 {
                for l1 in 0..2 {
                    for l2 in 0..2 {
                        let b = brute_entry(&code, &set, p1, l1, p2, l2);
                        assert!((r.entry(p1, l1, p2, l2) - b).norm() < 1e-15);
                        let want = if p1 == p2 && l1 == l2 { 1.0 } else { 0.0 };
                        assert!((b.re - want).abs() < 1e-15 && b.im.abs() < 1e-15);
                    }
                }
            }
        }
        assert_eq!(r.max_gram_off_diagonal(), Some(0.0));
    }

    #[test]
    fn phase_error_breaks_complex_repetition() {
        let code = build_complex3_code();
        let set = ErrorSet::new(ScalarField::Complex)
            .with("Epi@0", phase_error_pi(0))
            .unwrap();
        let r = kl_check(&code, &set, 1e-12).unwrap();
        assert!(!r.passes());
        assert!(r.ancilla_gram.is_none());
        let i = Complex64::new(0.0, 1.0);
        let witness = r.violations.iter().find_map(|v| match *v {
            KlViolation::DiagonalMismatch {
                p1: 0,
                p2: 1,
                value_m,
                value_n,
                ..
            } => Some((value_m, value_n)),
            _ => None,
        });
        assert_eq!(witness, Some((i, -i)));
    }

    #[test]
    fn h3_su2_passes_for_both_second_codewords() {
        for second in [H3Second::I, H3Second::J] {
            let code = build_h3_code(second);
            let set = effective_error_basis(&code, ErrorFamily::Su2).unwrap();
            let r = kl_check(&code, &set, 1e-12).unwrap();
            assert!(r.passes(), "{second:?}");
            assert_eq!(r.max_deviation(), 0.0);
            assert_eq!(r.max_gram_off_diagonal(), Some(0.0));
        }
    }

    #[test]
    fn mismatched_field_is_an_error() {
        let code = build_r3_code();
        let set = ErrorSet::new(ScalarField::Complex);
        assert!(matches!(
            kl_check(&code, &set, 1e-12),
            Err(CodeError::FieldMismatch { .. })
        ));
    }
}
