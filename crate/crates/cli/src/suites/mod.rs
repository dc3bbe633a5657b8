//! Verification suites, one per library module.

pub mod codes;
pub mod dirac;
pub mod linalg;
pub mod quaternion;

use eqec_core::linalg::{ScalarField, StateVector};
use eqec_core::rng::{complex_gaussian, gaussian, TrialRng};
use num_complex::Complex64;

use crate::config::{RunConfig, Target};
use crate::report::SuiteReport;

/// Stream indices for suites that draw from a single generator.
pub(crate) mod stream {
    pub const QUATERNION: u64 = 1 << 32;
    pub const LINALG: u64 = 2 << 32;
    pub const DIRAC: u64 = 3 << 32;
    pub const PHASE: u64 = 4 << 32;
    pub const FIRST_SITE: u64 = 5 << 32;
}

pub(crate) fn random_scalar(rng: &mut TrialRng, field: ScalarField) -> Complex64 {
    if field.is_real() {
        Complex64::new(gaussian(rng), 0.0)
    } else {
        complex_gaussian(rng)
    }
}

pub(crate) fn random_state(rng: &mut TrialRng, field: ScalarField, n_sites: usize) -> StateVector {
    let dim = field.site_dim().pow(n_sites as u32);
    let amps = (0..dim).map(|_| random_scalar(rng, field)).collect();
    StateVector::new(field, n_sites, amps).expect("field-valued amplitudes")
}

pub(crate) fn fmt_complex(z: Complex64) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format!("{}", z.re),
        (true, false) => format!("{}i", z.im),
        _ => format!("{}{:+}i", z.re, z.im),
    }
}

pub fn verify(target: Target, cfg: &RunConfig) -> SuiteReport {
    match target {
        Target::Quaternion => quaternion::run(cfg),
        Target::Linalg => linalg::run(cfg),
        Target::Codes => codes::run(cfg),
        Target::Dirac => dirac::run(cfg),
        Target::All => {
            let mut all = SuiteReport::new("all", cfg.seed, cfg.trials);
            for t in [Target::Quaternion, Target::Linalg, Target::Codes, Target::Dirac] {
                all.absorb(verify(t, cfg));
            }
            all
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(Complex64::new(0.0, 1.0)), "1i");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.0)), "-1i");
        assert_eq!(fmt_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
        assert_eq!(fmt_complex(Complex64::new(3.0, 0.0)), "3");
    }

    #[test]
    fn small_suites_pass() {
        let cfg = RunConfig::new(11, 20);
        for t in [Target::Quaternion, Target::Linalg, Target::Dirac] {
            let r = verify(t, &cfg);
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
