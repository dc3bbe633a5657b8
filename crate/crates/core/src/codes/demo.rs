//! The phase-error failure of the naive complex code and effective-error counting.

use num_complex::Complex64;

use super::{build_complex3_code, kl_check, phase_error_pi, Code, CodeError, ErrorOp, ErrorSet, KlReport, KlViolation};
use crate::linalg::{apply_site, ScalarField};

/// Outcome of applying `E_pi` to each site of a complex3 encoding of `(a, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFailureReport {
    pub logical: [Complex64; 2],
    /// `(ia, -ib)`: the logical state the corrupted vector encodes.
    pub mimicked: [Complex64; 2],
    /// Distance between `E_pi@k (encode(a, b))` and `encode(ia, -ib)` per site `k`.
    pub residual_per_site: Vec<f64>,
    /// `|<(a,b)|(ia,-ib)>|` for the normalized pair; 1 only when the two agree up to a phase.
    pub overlap: f64,
    /// Whether the corruption is a global phase (harmless).
    pub physically_equivalent: bool,
    pub kl: KlReport,
    /// The diagonal pair `(<0..|E_pi|0..>, <1..|E_pi|1..>)` that breaks the conditions.
    pub witness: Option<(Complex64, Complex64)>,
}

impl PhaseFailureReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_per_site.iter().copied().fold(0.0, f64::max)
    }
}

pub fn phase_failure_demo(logical: [Complex64; 2], tol: f64) -> Result<PhaseFailureReport, CodeError> {
    let code = build_complex3_code();
    let [a, b] = logical;
    let i = Complex64::new(0.0, 1.0);
    let mimicked = [i * a, -i * b];
    let encoded = code.encode(&logical)?;
    let target = code.encode(&mimicked)?;
    let residual_per_site = (0..code.n_sites())
        .map(|k| {
            let corrupted = apply_site(&phase_error_pi(k), &encoded)?;
            Ok(corrupted.max_abs_diff(&target)?)
        })
        .collect::<Result<Vec<_>, CodeError>>()?;

    let norm_sqr = a.norm_sqr() + b.norm_sqr();
    if norm_sqr == 0.0 {
        return Err(CodeError::ZeroCombination);
    }
    let overlap = (a.conj() * mimicked[0] + b.conj() * mimicked[1]).norm() / norm_sqr;

    let errors = ErrorSet::new(ScalarField::Complex).with("Epi@0", phase_error_pi(0))?;
    let kl = kl_check(&code, &errors, tol)?;
    let witness = kl.violations.iter().find_map(|v| match *v {
        KlViolation::DiagonalMismatch {
            p1: 0,
            p2: 1,
            value_m,
            value_n,
            ..
        } => Some((value_m, value_n)),
        _ => None,
    });
    Ok(PhaseFailureReport {
        logical,
        mimicked,
        residual_per_site,
        overlap,
        physically_equivalent: (1.0 - overlap).abs() <= tol,
        kl,
        witness,
    })
}

/// Groups the entries of `errors` by their action on the codewords.
///
/// Two errors share a class when their images of every codeword agree
/// within `tol`. Classes are listed by first member; the identity's class
/// comes first.
pub fn effective_classes(code: &Code, errors: &ErrorSet, tol: f64) -> Result<Vec<Vec<usize>>, CodeError> {
    let images = super::kl::error_images(code, errors)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    'outer: for (p, img) in images.iter().enumerate() {
        for class in classes.iter_mut() {
            let rep = &images[class[0]];
            let mut same = true;
            for (x, y) in rep.iter().zip(img) {
                if x.max_abs_diff(y)? > tol {
                    same = false;
                    break;
                }
            }
            if same {
                class.push(p);
                continue 'outer;
            }
        }
        classes.push(vec![p]);
    }
    Ok(classes)
}

/// Number of distinct non-identity actions among `errors`.
pub fn count_effective_errors(code: &Code, errors: &ErrorSet, tol: f64) -> Result<usize, CodeError> {
    Ok(effective_classes(code, errors, tol)?.len() - 1)
}

/// One representative per class, with the class index of every original entry.
#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveReduction {
    pub errors: ErrorSet,
    pub class_of: Vec<usize>,
}

pub fn reduce_to_effective(code: &Code, errors: &ErrorSet, tol: f64) -> Result<EffectiveReduction, CodeError> {
    let classes = effective_classes(code, errors, tol)?;
    let mut class_of = vec![0; errors.len()];
    let mut reduced = ErrorSet::new(errors.field());
    for (c, members) in classes.iter().enumerate() {
        for &p in members {
            class_of[p] = c;
        }
        if c == 0 {
            continue;
        }
        let rep = &errors.entries()[members[0]];
        let op = match &rep.op {
            ErrorOp::Identity => continue,
            op => op.clone(),
        };
        reduced.push(rep.label.clone(), op)?;
    }
    Ok(EffectiveReduction {
        errors: reduced,
        class_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{build_b3_code, build_r3_code, build_shor9_code, effective_error_basis, ErrorFamily};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn basis_state_is_only_rephased() {
        let r = phase_failure_demo([c(1.0, 0.0), c(0.0, 0.0)], 1e-12).unwrap();
        assert!(r.max_residual() < 1e-15);
        assert!(r.physically_equivalent);
    }

    #[test]
    fn balanced_state_becomes_a_different_state() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = phase_failure_demo([c(h, 0.0), c(h, 0.0)], 1e-12).unwrap();
        assert_eq!(r.mimicked, [c(0.0, h), c(0.0, -h)]);
        assert!(r.max_residual() < 1e-15);
        assert!(r.overlap < 1e-15);
        assert!(!r.physically_equivalent);
        assert!(!r.kl.passes());
        assert_eq!(r.witness, Some((c(0.0, 1.0), c(0.0, -1.0))));
    }

    #[test]
    fn b3_has_seven_effective_errors() {
        let code = build_b3_code();
        let set = effective_error_basis(&code, ErrorFamily::PauliPerSite).unwrap();
        assert_eq!(count_effective_errors(&code, &set, 1e-12).unwrap(), 7);
        let classes = effective_classes(&code, &set, 1e-12).unwrap();
        // Z on every site is one class.
        assert!(classes.iter().any(|cl| cl == &vec![3, 6, 9]));
    }

    #[test]
    fn r3_rotations_are_distinct_and_empty_set_counts_zero() {
        let code = build_r3_code();
        let set = effective_error_basis(&code, ErrorFamily::So2).unwrap();
        assert_eq!(count_effective_errors(&code, &set, 1e-12).unwrap(), 3);
        let empty = ErrorSet::new(ScalarField::Real);
        assert_eq!(count_effective_errors(&code, &empty, 1e-12).unwrap(), 0);
    }

    #[test]
    fn shor9_reduces_to_twenty_two_classes() {
        let code = build_shor9_code();
        let set = effective_error_basis(&code, ErrorFamily::PauliPerSite).unwrap();
        let red = reduce_to_effective(&code, &set, 1e-12).unwrap();
        assert_eq!(red.errors.len(), 22);
        assert_eq!(red.class_of.len(), 28);
        assert_eq!(red.class_of[0], 0);
        // Z@0, Z@1, Z@2 share a class.
        assert_eq!(red.class_of[3], red.class_of[6]);
        assert_eq!(red.class_of[3], red.class_of[9]);
        assert_ne!(red.class_of[3], red.class_of[12]);
    }
}
