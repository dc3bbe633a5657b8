//! Correction-operator synthesis and the encode / corrupt / correct cycle.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::kl::error_images;
use super::{kl_check, Code, CodeError, CombinedError, ErrorOp, ErrorSet};
use crate::linalg::{
    complete_orthonormal, inner_unchecked, LinearMap, ScalarField, StateVector,
};
use crate::tolerance::{TOL_ISO, TOL_KL, TOL_RANK};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Two errors are the same synthesized error when their codeword images agree this closely.
const MATCH_TOL: f64 = 1e-10;

/// How error `p` is assigned its ancilla basis state `|A_p>`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum AncillaLabels {
    /// Error `p` goes to ancilla basis state `p`.
    #[default]
    Sequential,
    /// Error `p` goes to ancilla basis state `labels[p]`.
    Explicit(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisOptions {
    pub labels: AncillaLabels,
    /// Also build the full orthogonal / unitary matrix.
    pub complete: bool,
    pub tol: f64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            labels: AncillaLabels::Sequential,
            complete: false,
            tol: TOL_KL,
        }
    }
}

/// One defining relation `E_p|w_l>|0_A> -> |w_l>|A_p>` of the partial isometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsometryPair {
    pub error: usize,
    pub codeword: usize,
    pub slot: usize,
}

/// The synthesized correction operator.
///
/// Domain vectors all carry the ancilla in `|0_A>`, so they are stored as
/// code-register vectors; images are products `|w_l> (x) |slot>`.
#[derive(Debug, Clone)]
pub struct CorrectionMap {
    field: ScalarField,
    code_sites: usize,
    n_ancilla: usize,
    ancilla_dim: usize,
    codewords: Vec<StateVector>,
    labels: Vec<String>,
    /// `E_p|w_l>` as produced on the code register, `[p][l]`.
    images: Vec<Vec<StateVector>>,
    /// `sqrt(<A_p|A_p>)`.
    image_norms: Vec<f64>,
    slots: Vec<usize>,
    pairs: Vec<IsometryPair>,
    completed: Option<LinearMap>,
}

impl CorrectionMap {
    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn n_ancilla(&self) -> usize {
        self.n_ancilla
    }

    pub fn ancilla_dim(&self) -> usize {
        self.ancilla_dim
    }

    pub fn code_dim(&self) -> usize {
        self.codewords[0].dim()
    }

    pub fn total_sites(&self) -> usize {
        self.code_sites + self.n_ancilla
    }

    pub fn pairs(&self) -> &[IsometryPair] {
        &self.pairs
    }

    pub fn error_labels(&self) -> &[String] {
        &self.labels
    }

    /// Ancilla basis index assigned to error `p`.
    pub fn slot(&self, p: usize) -> usize {
        self.slots[p]
    }

    pub fn completed(&self) -> Option<&LinearMap> {
        self.completed.as_ref()
    }

    /// `|0_A>`.
    pub fn ancilla_zero(&self) -> StateVector {
        StateVector::basis(self.field, self.n_ancilla, 0)
    }

    /// `|A_p>` as produced by the map (norm `sqrt(<A_p|A_p>)`).
    pub fn ancilla_state(&self, p: usize) -> StateVector {
        StateVector::basis(self.field, self.n_ancilla, self.slots[p])
            .scaled_unchecked(Complex64::new(self.image_norms[p], 0.0))
    }

    /// `|s> (x) |0_A>`.
    pub fn with_ancilla(&self, s: &StateVector) -> Result<StateVector, CodeError> {
        Ok(s.tensor(&self.ancilla_zero())?)
    }

    fn domain_code_vector(&self, k: usize) -> StateVector {
        let pair = self.pairs[k];
        self.images[pair.error][pair.codeword]
            .scaled_unchecked(Complex64::new(1.0 / self.image_norms[pair.error], 0.0))
    }

    /// Normalized `E_p|w_l> (x) |0_A>` for pair `k`.
    pub fn domain_vector(&self, k: usize) -> StateVector {
        self.domain_code_vector(k)
            .tensor(&self.ancilla_zero())
            .expect("same field")
    }

    /// `|w_l> (x) |slot_p>` for pair `k`.
    pub fn image_vector(&self, k: usize) -> StateVector {
        let pair = self.pairs[k];
        self.codewords[pair.codeword]
            .tensor(&StateVector::basis(self.field, self.n_ancilla, pair.slot))
            .expect("same field")
    }

    fn check_full(&self, s: &StateVector) -> Result<(), CodeError> {
        if s.field() != self.field {
            return Err(CodeError::FieldMismatch {
                code: self.field,
                errors: s.field(),
            });
        }
        let want = self.code_dim() * self.ancilla_dim;
        if s.dim() != want {
            return Err(crate::linalg::LinalgError::DimensionMismatch {
                expected: want,
                found: s.dim(),
            }
            .into());
        }
        Ok(())
    }

    /// `|psi>` restricted to ancilla `|0_A>`, as a code-register slice.
    fn ancilla_zero_slice(&self, s: &StateVector) -> DVector<Complex64> {
        let a = self.ancilla_dim;
        DVector::from_fn(self.code_dim(), |c, _| s.amplitudes()[c * a])
    }

    /// Applies the partial isometry `sum_k |image_k><domain_k|`.
    ///
    /// On the span of the domain vectors this agrees with the completed
    /// operator; outside it the result drops the orthogonal component.
    pub fn apply(&self, s: &StateVector) -> Result<StateVector, CodeError> {
        self.check_full(s)?;
        let slice = self.ancilla_zero_slice(s);
        let a = self.ancilla_dim;
        let mut out = DVector::from_element(s.dim(), ZERO);
        for (k, pair) in self.pairs.iter().enumerate() {
            let dom = self.domain_code_vector(k);
            let coeff = inner_unchecked(self.field, dom.amplitudes().as_slice(), slice.as_slice());
            if coeff == ZERO {
                continue;
            }
            for (c, w) in self.codewords[pair.codeword].amplitudes().iter().enumerate() {
                out[c * a + pair.slot] += coeff * w;
            }
        }
        Ok(StateVector::from_parts_unchecked(self.field, self.total_sites(), out))
    }

    /// Squared norm of the part of `s` outside the domain span.
    fn leakage_sqr(&self, s: &StateVector) -> f64 {
        let mut rest = self.ancilla_zero_slice(s);
        for k in 0..self.pairs.len() {
            let dom = self.domain_code_vector(k);
            let coeff = inner_unchecked(self.field, dom.amplitudes().as_slice(), rest.as_slice());
            rest -= dom.amplitudes() * coeff;
        }
        let a = self.ancilla_dim;
        let off_zero: f64 = s
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| i % a != 0)
            .map(|(_, z)| z.norm_sqr())
            .sum();
        rest.norm_squared() + off_zero
    }

    /// Index of the synthesized error whose action on every codeword equals
    /// that of `op` within `tol`.
    pub fn match_error(&self, op: &ErrorOp, tol: f64) -> Result<Option<usize>, CodeError> {
        let imgs: Vec<StateVector> = self
            .codewords
            .iter()
            .map(|w| op.apply(w))
            .collect::<Result<_, _>>()?;
        for (p, known) in self.images.iter().enumerate() {
            let mut same = true;
            for (a, b) in known.iter().zip(&imgs) {
                if a.max_abs_diff(b)? > tol {
                    same = false;
                    break;
                }
            }
            if same {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

/// Builds `U_ec` with `U_ec(E_p|w_l>|0_A>) = |w_l>|A_p>` for every error in
/// `errors`.
///
/// Requires the Knill–Laflamme conditions with a diagonal ancilla Gram
/// matrix, i.e. mutually orthogonal error images.
pub fn synthesize_correction(
    code: &Code,
    errors: &ErrorSet,
    n_ancilla: usize,
    opts: &SynthesisOptions,
) -> Result<CorrectionMap, CodeError> {
    let tol = opts.tol;
    let kl = kl_check(code, errors, tol)?;
    if !kl.passes() {
        return Err(CodeError::KlFailure {
            violations: kl.violations.len(),
            max_deviation: kl.max_deviation(),
        });
    }
    let gram = kl.ancilla_gram.as_ref().expect("present when passing");
    let np = errors.len();
    for p1 in 0..np {
        for p2 in 0..np {
            if p1 != p2 && gram[(p1, p2)].norm() > tol {
                return Err(CodeError::NonOrthogonalImages {
                    p1,
                    p2,
                    overlap: gram[(p1, p2)].norm(),
                });
            }
        }
    }
    let mut image_norms = Vec::with_capacity(np);
    for p in 0..np {
        let g = gram[(p, p)].re;
        if g <= tol {
            return Err(CodeError::DegenerateImage { error: p });
        }
        image_norms.push(g.sqrt());
    }

    let ancilla_dim = code.field().site_dim().pow(n_ancilla as u32);
    if np > ancilla_dim {
        return Err(CodeError::InsufficientAncilla {
            needed: np,
            available: ancilla_dim,
        });
    }
    let slots = match &opts.labels {
        AncillaLabels::Sequential => (0..np).collect::<Vec<_>>(),
        AncillaLabels::Explicit(l) => {
            if l.len() != np {
                return Err(CodeError::InvalidLabels(format!(
                    "{} labels for {np} errors",
                    l.len()
                )));
            }
            if let Some(bad) = l.iter().find(|&&s| s >= ancilla_dim) {
                return Err(CodeError::InvalidLabels(format!(
                    "label {bad} outside ancilla register of size {ancilla_dim}"
                )));
            }
            let mut sorted = l.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != l.len() {
                return Err(CodeError::InvalidLabels("labels must be distinct".into()));
            }
            l.clone()
        }
    };

    let nl = code.codewords().len();
    let pairs = (0..np)
        .flat_map(|p| {
            let slot = slots[p];
            (0..nl).map(move |l| IsometryPair {
                error: p,
                codeword: l,
                slot,
            })
        })
        .collect();
    let mut map = CorrectionMap {
        field: code.field(),
        code_sites: code.n_sites(),
        n_ancilla,
        ancilla_dim,
        codewords: code.codewords().to_vec(),
        labels: errors.labels().map(str::to_owned).collect(),
        images: error_images(code, errors)?,
        image_norms,
        slots,
        pairs,
        completed: None,
    };
    if opts.complete {
        map.completed = Some(complete_map(&map)?);
    }
    Ok(map)
}

/// Extends both vector lists to orthonormal bases and pairs them up.
fn complete_map(map: &CorrectionMap) -> Result<LinearMap, CodeError> {
    let k = map.pairs.len();
    let domain: Vec<StateVector> = (0..k).map(|i| map.domain_vector(i)).collect();
    let image: Vec<StateVector> = (0..k).map(|i| map.image_vector(i)).collect();
    let dom = complete_orthonormal(&domain, TOL_RANK)?;
    let img = complete_orthonormal(&image, TOL_RANK)?;
    let n = dom.len();
    let dm = DMatrix::from_fn(n, n, |r, c| dom[c].amplitudes()[r]);
    let im = DMatrix::from_fn(n, n, |r, c| img[c].amplitudes()[r]);
    let u = im * dm.adjoint();
    let u = if map.field.is_real() {
        u.map(|z| Complex64::new(z.re, 0.0))
    } else {
        u
    };
    let u = LinearMap::new(map.field, u)?;
    debug_assert!(crate::linalg::is_isometry(&u, TOL_ISO).is_isometry);
    Ok(u)
}

/// Result of one encode / corrupt / correct cycle.
#[derive(Debug, Clone)]
pub struct RoundtripOutcome {
    pub encoded: StateVector,
    pub corrupted: StateVector,
    /// The code-register factor of the corrected state.
    pub recovered: StateVector,
    /// `<w_l|recovered>`.
    pub recovered_logical: Vec<Complex64>,
    /// The ancilla factor of the corrected state.
    pub ancilla: StateVector,
    /// `sum_p e_p |A_p>` when every term of the error matched a synthesized one.
    pub expected_ancilla: Option<StateVector>,
    /// Distance of the corrected state from `recovered (x) ancilla`, including
    /// any component outside the correction map's domain.
    pub residual: f64,
    /// `|<recovered|encoded>|` for the normalized vectors.
    pub fidelity: f64,
}

impl RoundtripOutcome {
    /// Largest componentwise distance between `ancilla` and `expected_ancilla`.
    pub fn ancilla_deviation(&self) -> Option<f64> {
        self.expected_ancilla
            .as_ref()
            .map(|e| self.ancilla.max_abs_diff(e).expect("same register"))
    }
}

/// Encodes `sum_l c_l |w_l>`, applies `err`, appends `|0_A>`, applies the
/// correction, and factors the result as `|W> (x) sum_p e_p |A_p>`.
pub fn roundtrip(
    code: &Code,
    map: &CorrectionMap,
    logical: &[Complex64],
    err: &CombinedError,
    tol: f64,
) -> Result<RoundtripOutcome, CodeError> {
    let encoded = code.encode(logical)?;
    let w_norm_sqr = encoded.norm().powi(2);
    if w_norm_sqr == 0.0 {
        return Err(CodeError::ZeroCombination);
    }
    let corrupted = err.apply(&encoded)?;
    let full = map.with_ancilla(&corrupted)?;
    let corrected = map.apply(&full)?;
    let leak = map.leakage_sqr(&full);

    let (cd, ad) = (map.code_dim(), map.ancilla_dim);
    let r = DMatrix::from_fn(cd, ad, |c, a| corrected.amplitudes()[c * ad + a]);
    let field = code.field();
    // ancilla_a = <W| R[:, a]> / |W|^2
    let w = encoded.amplitudes();
    let anc = DVector::from_fn(ad, |a, _| {
        let col: Vec<Complex64> = r.column(a).iter().copied().collect();
        inner_unchecked(field, w.as_slice(), &col) / w_norm_sqr
    });
    let anc_norm_sqr = anc.norm_squared();
    let rec = if anc_norm_sqr > 0.0 {
        DVector::from_fn(cd, |c, _| {
            let row: Vec<Complex64> = r.row(c).iter().copied().collect();
            inner_unchecked(field, anc.as_slice(), &row) / anc_norm_sqr
        })
    } else {
        DVector::from_element(cd, ZERO)
    };
    let mut factor_res = 0.0f64;
    for c in 0..cd {
        for a in 0..ad {
            factor_res += (r[(c, a)] - rec[c] * anc[a]).norm_sqr();
        }
    }
    let residual = (factor_res + leak).sqrt();

    let recovered = StateVector::from_parts_unchecked(field, code.n_sites(), rec);
    let ancilla = StateVector::from_parts_unchecked(field, map.n_ancilla, anc);
    let recovered_logical = code
        .codewords()
        .iter()
        .map(|cw| crate::linalg::inner(cw, &recovered))
        .collect::<Result<Vec<_>, _>>()?;
    let fidelity = match recovered.normalized() {
        Some(rn) => {
            let en = encoded.normalized().expect("nonzero");
            crate::linalg::inner(&rn, &en)?.norm()
        }
        None => 0.0,
    };

    let mut expected = Some(StateVector::zeros(field, map.n_ancilla));
    for (e, entry) in err.terms() {
        let Some(acc) = expected.as_mut() else { break };
        match map.match_error(&entry.op, MATCH_TOL)? {
            Some(p) => *acc = acc.add(&map.ancilla_state(p).scaled_unchecked(*e))?,
            None => expected = None,
        }
    }

    if residual > tol {
        return Err(CodeError::Factorization { residual });
    }
    Ok(RoundtripOutcome {
        encoded,
        corrupted,
        recovered,
        recovered_logical,
        ancilla,
        expected_ancilla: expected,
        residual,
        fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::reference::{RCORR_ANCILLA_LABELS, RCORR_ROWS};
    use crate::codes::{
        build_h3_code, build_r3_code, effective_error_basis, ErrorFamily, H3Second,
    };
    use crate::linalg::{inner, is_isometry};

    fn r3_map(complete: bool) -> (Code, CorrectionMap) {
        let code = build_r3_code();
        let set = effective_error_basis(&code, ErrorFamily::So2).unwrap();
        let opts = SynthesisOptions {
            labels: AncillaLabels::Explicit(RCORR_ANCILLA_LABELS.to_vec()),
            complete,
            ..Default::default()
        };
        let map = synthesize_correction(&code, &set, 2, &opts).unwrap();
        (code, map)
    }

    #[test]
    fn reproduces_correction_table() {
        let (_, map) = r3_map(true);
        let u = map.completed().unwrap();
        assert!(is_isometry(u, 1e-10).is_isometry);
        for row in RCORR_ROWS {
            let input = StateVector::basis(ScalarField::Real, 5, row.input_index());
            let out = u.apply(&input).unwrap();
            let want = StateVector::basis(ScalarField::Real, 5, row.output_index())
                .scale(Complex64::new(row.sign, 0.0))
                .unwrap();
            assert!(out.max_abs_diff(&want).unwrap() < 1e-12, "{row:?}");
            // The partial isometry agrees on its domain.
            let out = map.apply(&input).unwrap();
            assert!(out.max_abs_diff(&want).unwrap() < 1e-12, "{row:?}");
        }
    }

    #[test]
    fn first_site_rotation_is_transferred_to_ancilla() {
        let (code, map) = r3_map(false);
        let theta: f64 = 0.83;
        let (a, b) = (0.28, -0.96);
        let err = CombinedError::so2_rotation(theta, 0, ScalarField::Real).unwrap();
        let logical = [Complex64::new(a, 0.0), Complex64::new(b, 0.0)];
        let out = roundtrip(&code, &map, &logical, &err, 1e-10).unwrap();
        assert!((out.fidelity - 1.0).abs() < 1e-12);
        assert!((out.recovered_logical[0].re - a).abs() < 1e-12);
        assert!((out.recovered_logical[1].re - b).abs() < 1e-12);
        // alpha |00> + beta |10>
        let anc = out.ancilla.amplitudes();
        assert!((anc[0b00].re - theta.cos()).abs() < 1e-12);
        assert!((anc[0b10].re - theta.sin()).abs() < 1e-12);
        assert!(anc[0b01].norm() < 1e-12 && anc[0b11].norm() < 1e-12);
        assert!(out.ancilla_deviation().unwrap() < 1e-12);
    }

    #[test]
    fn identity_error_leaves_state_unchanged() {
        let (code, map) = r3_map(false);
        let set = effective_error_basis(&code, ErrorFamily::So2).unwrap();
        let mut e = vec![Complex64::new(0.0, 0.0); 4];
        e[0] = Complex64::new(1.0, 0.0);
        let err = CombinedError::from_set(&set, &e).unwrap();
        let logical = [Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)];
        let out = roundtrip(&code, &map, &logical, &err, 1e-10).unwrap();
        assert!(out.recovered.max_abs_diff(&out.encoded).unwrap() < 1e-15);
        assert!(out.ancilla.max_abs_diff(&map.ancilla_zero()).unwrap() < 1e-15);
    }

    #[test]
    fn h3_partial_isometry_vectors_are_orthonormal() {
        let code = build_h3_code(H3Second::J);
        let set = effective_error_basis(&code, ErrorFamily::Su2).unwrap();
        let map = synthesize_correction(&code, &set, 2, &SynthesisOptions::default()).unwrap();
        assert_eq!(map.pairs().len(), 20);
        assert_eq!(map.code_dim() * map.ancilla_dim(), 1024);
        let dom: Vec<_> = (0..20).map(|k| map.domain_vector(k)).collect();
        let img: Vec<_> = (0..20).map(|k| map.image_vector(k)).collect();
        for list in [&dom, &img] {
            for a in 0..20 {
                for b in 0..20 {
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((inner(&list[a], &list[b]).unwrap().re - want).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn synthesis_errors() {
        let code = build_r3_code();
        let set = effective_error_basis(&code, ErrorFamily::So2).unwrap();
        assert!(matches!(
            synthesize_correction(&code, &set, 1, &SynthesisOptions::default()),
            Err(CodeError::InsufficientAncilla { needed: 4, available: 2 })
        ));
        let dup = SynthesisOptions {
            labels: AncillaLabels::Explicit(vec![0, 1, 1, 2]),
            ..Default::default()
        };
        assert!(matches!(
            synthesize_correction(&code, &set, 2, &dup),
            Err(CodeError::InvalidLabels(_))
        ));
        let c3 = crate::codes::build_complex3_code();
        let bad = ErrorSet::new(ScalarField::Complex)
            .with("Epi@0", crate::codes::phase_error_pi(0))
            .unwrap();
        assert!(matches!(
            synthesize_correction(&c3, &bad, 1, &SynthesisOptions::default()),
            Err(CodeError::KlFailure { .. })
        ));
    }

    #[test]
    fn degenerate_images_are_rejected() {
        // Z on sites 0 and 1 act identically on B3.
        let code = crate::codes::build_b3_code();
        let set = effective_error_basis(&code, ErrorFamily::PauliPerSite).unwrap();
        assert!(matches!(
            synthesize_correction(&code, &set, 4, &SynthesisOptions::default()),
            Err(CodeError::NonOrthogonalImages { .. }) | Err(CodeError::KlFailure { .. })
        ));
    }

    #[test]
    fn out_of_family_error_fails_factorization() {
        let (code, map) = r3_map(false);
        // Two simultaneous quarter turns are outside the single-site span.
        let g0 = crate::codes::so2_error(std::f64::consts::FRAC_PI_2, 0, ScalarField::Real).unwrap();
        let g1 = crate::codes::so2_error(std::f64::consts::FRAC_PI_2, 1, ScalarField::Real).unwrap();
        let both = LinearMap::new(
            ScalarField::Real,
            g0.embed(3).unwrap().matrix() * g1.embed(3).unwrap().matrix(),
        )
        .unwrap();
        let err = CombinedError::from_terms(
            ScalarField::Real,
            vec![(
                Complex64::new(1.0, 0.0),
                crate::codes::ErrorEntry {
                    label: "G@0 G@1".into(),
                    op: ErrorOp::Full(both),
                },
            )],
        )
        .unwrap();
        let logical = [Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)];
        assert!(matches!(
            roundtrip(&code, &map, &logical, &err, 1e-10),
            Err(CodeError::Factorization { .. })
        ));
    }
}
