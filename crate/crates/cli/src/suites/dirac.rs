use eqec_core::dirac::{
    bivectors, build_gammas_majorana, build_gammas_standard, build_majorana_transform, chi_preservation,
    clifford_check, error_generators, majorana_targets, majorana_transform_reference, max_abs_diff, max_imag,
    quaternion_correspondence, real_invariance, sign_pattern_matrix, transform_basis, unitarity_deviation,
    DiracSpinor, ErrorRotor, Matrix4c, Vector4c, GAMMA_NAMES, MAJORANA_BIVECTORS,
};
use eqec_core::quaternion::Quaternion;
use eqec_core::rng::{complex_gaussian, quaternion, trial_rng, unit_quaternion, TrialRng};
use nalgebra::{DMatrix, Vector2};
use num_complex::Complex64;

use crate::config::RunConfig;
use crate::report::{CheckRecord, SuiteReport};

use super::stream;

pub const ANCHOR_ALGEBRA: &str = "gamma matrix algebra";
pub const ANCHOR_UM: &str = "Majorana basis change U_M";
pub const ANCHOR_TARGETS: &str = "gamma matrices in the Majorana basis";
pub const ANCHOR_REAL: &str = "real error generators in the Majorana basis";
pub const ANCHOR_CORR: &str = "spinor errors as quaternion right multiplication";
pub const ANCHOR_CHI: &str = "error rotors keep chi = 0";
pub const ANCHOR_INVARIANT: &str = "real subspace invariance";

fn random_unitary(rng: &mut TrialRng) -> Matrix4c {
    let m = DMatrix::from_fn(4, 4, |_, _| complex_gaussian(rng));
    let (q, _) = m.qr().unpack();
    Matrix4c::from_fn(|r, c| q[(r, c)])
}

pub fn run(cfg: &RunConfig) -> SuiteReport {
    let mut r = SuiteReport::new("dirac", cfg.seed, cfg.trials);
    let mut rng = trial_rng(cfg.seed, stream::DIRAC);
    let standard = build_gammas_standard();
    let majorana = build_gammas_majorana();

    let tol = cfg.tol(1e-12);
    let mut dev = clifford_check(&standard).max_deviation().max(clifford_check(&majorana).max_deviation());
    let mut ok = true;
    for _ in 0..100 {
        match transform_basis(&standard, &random_unitary(&mut rng), "random") {
            Ok(g) => dev = dev.max(clifford_check(&g).max_deviation()),
            Err(_) => ok = false,
        }
    }
    r.push(
        CheckRecord::positive("clifford_relations", ANCHOR_ALGEBRA, ok && dev <= tol, dev, tol)
            .with_witness("standard, Majorana and 100 random unitary bases"),
    );

    let u = build_majorana_transform();
    let entry = max_abs_diff(&u, &majorana_transform_reference());
    r.push(CheckRecord::within("um_explicit_matrix", ANCHOR_UM, entry, cfg.tol(1e-15)));
    r.push(CheckRecord::within("um_unitary", ANCHOR_UM, unitarity_deviation(&u), cfg.tol(1e-14)));

    let targets = majorana_targets();
    let worst = majorana
        .all()
        .iter()
        .zip(&targets)
        .zip(GAMMA_NAMES)
        .map(|((g, t), name)| (max_abs_diff(g, t), name))
        .fold((0.0f64, ""), |a, b| if b.0 > a.0 { b } else { a });
    r.push(
        CheckRecord::within("majorana_targets", ANCHOR_TARGETS, worst.0, cfg.tol(1e-13))
            .with_witness("basis change conj(U_M); conjugating by U_M itself negates g0, g1, g3 and g5"),
    );

    let gens = error_generators(&majorana);
    r.push(CheckRecord::within("generators_real", ANCHOR_REAL, gens.max_imag(), cfg.tol(1e-14)));
    let pattern = bivectors(&majorana)
        .iter()
        .zip(&MAJORANA_BIVECTORS)
        .map(|(b, p)| max_abs_diff(b, &sign_pattern_matrix(p)).max(max_imag(b)))
        .fold(0.0, f64::max);
    r.push(CheckRecord::within("generator_sign_patterns", ANCHOR_REAL, pattern, cfg.tol(1e-14)));
    r.push(CheckRecord::within(
        "generator_product",
        ANCHOR_REAL,
        max_abs_diff(&(gens.e1 * gens.e2), &gens.e3),
        cfg.tol(1e-14),
    ));

    let mut corr = 0.0f64;
    for q in Quaternion::BASIS {
        for e in Quaternion::BASIS {
            corr = corr.max(quaternion_correspondence(ErrorRotor::from_quaternion(e), q, &gens).max_deviation());
        }
    }
    let mut iso = 0.0f64;
    for _ in 0..cfg.trials {
        let q = quaternion(&mut rng);
        let e = ErrorRotor::from_quaternion(unit_quaternion(&mut rng).get());
        corr = corr.max(quaternion_correspondence(e, q, &gens).max_deviation() / (1.0 + q.norm()));
        iso = iso.max(unitarity_deviation(&e.matrix(&gens)));
    }
    r.push(CheckRecord::within("quaternion_correspondence", ANCHOR_CORR, corr, cfg.tol(1e-12)));
    r.push(CheckRecord::within("unit_rotor_isometry", ANCHOR_CORR, iso, cfg.tol(1e-12)));

    let mut chi = 0.0f64;
    for _ in 0..cfg.trials {
        let xi = Vector2::new(complex_gaussian(&mut rng), complex_gaussian(&mut rng));
        let s = DiracSpinor::from_phi_chi(xi, Vector2::zeros());
        let q = quaternion(&mut rng);
        let rep = chi_preservation(ErrorRotor::from_quaternion(q), &s, 1e-12);
        chi = chi.max(rep.chi_after / (1.0 + q.norm() * s.psi.norm()));
    }
    r.push(CheckRecord::within("chi_preserved", ANCHOR_CHI, chi, cfg.tol(1e-12)));

    let mut inv = 0.0f64;
    for _ in 0..cfg.trials {
        let s = Vector4c::from_fn(|_, _| complex_gaussian(&mut rng));
        let q = quaternion(&mut rng);
        inv = inv.max(real_invariance(ErrorRotor::from_quaternion(q), &s, &gens).max_deviation() / (1.0 + q.norm()));
    }
    let real = Vector4c::from_fn(|_, _| Complex64::new(complex_gaussian(&mut rng).re, 0.0));
    let out = ErrorRotor::new(0.1, 0.7, -0.4, 0.2).matrix(&gens) * real;
    inv = inv.max(out.iter().map(|z| z.im.abs()).fold(0.0, f64::max));
    r.push(CheckRecord::within("real_subspace_invariant", ANCHOR_INVARIANT, inv, cfg.tol(1e-14)));

    let [b1, b2, b3] = bivectors(&standard);
    let signs = [b1, b2, b3]
        .iter()
        .zip([eqec_core::quaternion::PauliMatrix::X, eqec_core::quaternion::PauliMatrix::Y, eqec_core::quaternion::PauliMatrix::Z])
        .map(|(b, p)| {
            let s = p.matrix();
            let mut blocks = Matrix4c::zeros();
            blocks.fixed_view_mut::<2, 2>(0, 0).copy_from(&s);
            blocks.fixed_view_mut::<2, 2>(2, 2).copy_from(&s);
            max_abs_diff(b, &(blocks * Complex64::new(0.0, -1.0)))
        })
        .fold(0.0, f64::max);
    r.note(format!(
        "standard-basis products g2g3, g3g1, g1g2 equal -i times the block Pauli matrices (deviation {signs:e})"
    ));
    r
}
