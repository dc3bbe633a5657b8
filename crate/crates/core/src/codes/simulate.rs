//! Seeded batches of encode / corrupt / correct trials.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use super::{
    build_h3_code, build_r3_code, build_shor9_code, effective_error_basis, reduce_to_effective, roundtrip,
    synthesize_correction, AncillaLabels, Code, CodeError, CombinedError, CorrectionMap, ErrorFamily, ErrorSet,
    H3Second, SynthesisOptions,
};
use crate::rng::{angle, trial_rng, unit_complex_coefficients, unit_quaternion, unit_real_coefficients, TrialRng};
use crate::tolerance::TOL_CMP;

use super::reference::RCORR_ANCILLA_LABELS;

/// A code together with its single-site error family and correction map.
#[derive(Debug, Clone)]
pub struct CodeSetup {
    pub code: Code,
    pub family: ErrorFamily,
    /// The full effective basis of `family`.
    pub errors: ErrorSet,
    pub map: CorrectionMap,
}

impl CodeSetup {
    /// r3 with SO(2) errors and two ancilla bits labelled as in the published table.
    pub fn r3() -> Result<Self, CodeError> {
        let code = build_r3_code();
        let errors = effective_error_basis(&code, ErrorFamily::So2)?;
        let opts = SynthesisOptions {
            labels: AncillaLabels::Explicit(RCORR_ANCILLA_LABELS.to_vec()),
            ..Default::default()
        };
        let map = synthesize_correction(&code, &errors, 2, &opts)?;
        Ok(Self {
            code,
            family: ErrorFamily::So2,
            errors,
            map,
        })
    }

    /// h3 with SU(2) errors and two ancilla H-qubits (a 1024-dimensional space).
    pub fn h3(second: H3Second) -> Result<Self, CodeError> {
        let code = build_h3_code(second);
        let errors = effective_error_basis(&code, ErrorFamily::Su2)?;
        let map = synthesize_correction(&code, &errors, 2, &SynthesisOptions::default())?;
        Ok(Self {
            code,
            family: ErrorFamily::Su2,
            errors,
            map,
        })
    }

    /// shor9 with single-qubit Paulis. Phase errors within a block act
    /// identically, so the map is built for one representative per class
    /// (22 classes, five ancilla qubits).
    pub fn shor9() -> Result<Self, CodeError> {
        let code = build_shor9_code();
        let errors = effective_error_basis(&code, ErrorFamily::PauliPerSite)?;
        let reduced = reduce_to_effective(&code, &errors, TOL_CMP)?;
        let n_ancilla = ancilla_qubits(reduced.errors.len());
        let map = synthesize_correction(&code, &reduced.errors, n_ancilla, &SynthesisOptions::default())?;
        Ok(Self {
            code,
            family: ErrorFamily::PauliPerSite,
            errors,
            map,
        })
    }

    fn logical<R: Rng>(&self, rng: &mut R) -> Vec<Complex64> {
        let n = self.code.codewords().len();
        if self.code.field().is_real() {
            unit_real_coefficients(rng, n)
        } else {
            unit_complex_coefficients(rng, n)
        }
    }

    /// A family error on one random site.
    pub fn random_site_error<R: Rng>(&self, rng: &mut R) -> Result<CombinedError, CodeError> {
        let site = rng.random_range(0..self.code.n_sites());
        match self.family {
            ErrorFamily::So2 => CombinedError::so2_rotation(angle(rng), site, self.code.field()),
            ErrorFamily::Su2 => Ok(CombinedError::su2_rotation(unit_quaternion(rng), site)),
            ErrorFamily::PauliPerSite => {
                // exp(i t n.sigma) = cos t I + i sin t (nx X + ny Y + nz Z)
                let t = angle(rng);
                let n = unit_real_coefficients(rng, 3);
                let i = Complex64::new(0.0, 1.0);
                let mut coeffs = vec![Complex64::new(0.0, 0.0); self.errors.len()];
                coeffs[0] = Complex64::new(t.cos(), 0.0);
                for (a, c) in n.iter().enumerate() {
                    coeffs[1 + 3 * site + a] = i * t.sin() * c;
                }
                CombinedError::from_set(&self.errors, &coeffs)
            }
        }
    }

    /// Random coefficients over the whole effective basis.
    pub fn random_combination<R: Rng>(&self, rng: &mut R) -> Result<CombinedError, CodeError> {
        let n = self.errors.len();
        let coeffs = if self.code.field().is_real() {
            unit_real_coefficients(rng, n)
        } else {
            unit_complex_coefficients(rng, n)
        };
        CombinedError::from_set(&self.errors, &coeffs)
    }
}

/// Smallest qubit register with at least `states` basis states.
pub fn ancilla_qubits(states: usize) -> usize {
    let mut n = 0;
    while (1usize << n) < states {
        n += 1;
    }
    n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TrialKind {
    /// One family error on a random site.
    SingleSite,
    /// A random linear combination of the whole effective basis.
    Combination,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub index: u64,
    pub fidelity: f64,
    pub residual: f64,
    /// Distance of the ancilla factor from `sum_p e_p |A_p>`; `None` when a
    /// term had no synthesized counterpart.
    pub ancilla_deviation: Option<f64>,
    /// Largest `|<w_l|recovered> - c_l|`.
    pub logical_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSummary {
    pub trials: usize,
    pub min_fidelity: f64,
    pub max_residual: f64,
    pub max_ancilla_deviation: f64,
    pub max_logical_deviation: f64,
    /// Trials with no expected ancilla state.
    pub unmatched: usize,
}

impl SimulationSummary {
    pub fn from_outcomes(outcomes: &[TrialOutcome]) -> Self {
        let mut s = Self {
            trials: outcomes.len(),
            min_fidelity: f64::INFINITY,
            max_residual: 0.0,
            max_ancilla_deviation: 0.0,
            max_logical_deviation: 0.0,
            unmatched: 0,
        };
        for o in outcomes {
            s.min_fidelity = s.min_fidelity.min(o.fidelity);
            s.max_residual = s.max_residual.max(o.residual);
            s.max_logical_deviation = s.max_logical_deviation.max(o.logical_deviation);
            match o.ancilla_deviation {
                Some(d) => s.max_ancilla_deviation = s.max_ancilla_deviation.max(d),
                None => s.unmatched += 1,
            }
        }
        s
    }

    /// Largest distance of any fidelity from one.
    pub fn fidelity_deviation(&self) -> f64 {
        (1.0 - self.min_fidelity).abs()
    }
}

fn one_trial(setup: &CodeSetup, kind: TrialKind, rng: &mut TrialRng, index: u64) -> Result<TrialOutcome, CodeError> {
    let logical = setup.logical(rng);
    let err = match kind {
        TrialKind::SingleSite => setup.random_site_error(rng)?,
        TrialKind::Combination => setup.random_combination(rng)?,
    };
    let out = roundtrip(&setup.code, &setup.map, &logical, &err, f64::INFINITY)?;
    let logical_deviation = out
        .recovered_logical
        .iter()
        .zip(&logical)
        .map(|(r, c)| (r - c).norm())
        .fold(0.0, f64::max);
    Ok(TrialOutcome {
        index,
        fidelity: out.fidelity,
        residual: out.residual,
        ancilla_deviation: out.ancilla_deviation(),
        logical_deviation,
    })
}

/// Runs `trials` roundtrips; trial `t` draws from `trial_rng(seed, t)`.
pub fn run_trials(setup: &CodeSetup, kind: TrialKind, seed: u64, trials: usize) -> Result<Vec<TrialOutcome>, CodeError> {
    (0..trials as u64)
        .into_par_iter()
        .map(|t| one_trial(setup, kind, &mut trial_rng(seed, t), t))
        .collect()
}

pub fn simulate(setup: &CodeSetup, kind: TrialKind, seed: u64, trials: usize) -> Result<SimulationSummary, CodeError> {
    Ok(SimulationSummary::from_outcomes(&run_trials(setup, kind, seed, trials)?))
}
