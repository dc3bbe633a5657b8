use eqec_core::codes::{
    build_h3_code, build_r3_code, effective_error_basis, kl_check, ErrorFamily, H3Second,
};
use eqec_core::dirac::{
    build_gammas_majorana, build_gammas_standard, clifford_check, error_generators, quaternion_correspondence,
    transform_basis, unitarity_deviation, ErrorRotor, Matrix4c,
};
use eqec_core::linalg::{
    apply_site, complete_orthonormal, inner, is_isometry, tensor_op, LinearMap, ScalarField, SiteOperator,
    StateVector,
};
use eqec_core::quaternion::{hopf_project, su2_matrix, su2_right_action, Quaternion, UnitQuaternion};
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn quat() -> impl Strategy<Value = Quaternion> {
    (coord(), coord(), coord(), coord()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn unit() -> impl Strategy<Value = UnitQuaternion> {
    quat()
        .prop_filter("nonzero", |q| q.norm() > 1e-3)
        .prop_map(|q| UnitQuaternion::normalize(q).unwrap())
}

fn complex() -> impl Strategy<Value = Complex64> {
    (coord(), coord()).prop_map(|(re, im)| Complex64::new(re, im))
}

fn state(field: ScalarField, n_sites: usize) -> impl Strategy<Value = StateVector> {
    let dim = field.site_dim().pow(n_sites as u32);
    prop::collection::vec(complex(), dim).prop_map(move |v| {
        let v = if field.is_real() {
            v.into_iter().map(|z| Complex64::new(z.re, 0.0)).collect()
        } else {
            v
        };
        StateVector::new(field, n_sites, v).unwrap()
    })
}

fn site_matrix(field: ScalarField) -> impl Strategy<Value = LinearMap> {
    let d = field.site_dim();
    prop::collection::vec(complex(), d * d).prop_map(move |v| {
        let m = DMatrix::from_fn(d, d, |r, c| {
            let z = v[r * d + c];
            if field.is_real() {
                Complex64::new(z.re, 0.0)
            } else {
                z
            }
        });
        LinearMap::new(field, m).unwrap()
    })
}

fn field() -> impl Strategy<Value = ScalarField> {
    prop_oneof![
        Just(ScalarField::Real),
        Just(ScalarField::Complex),
        Just(ScalarField::QuaternionR4)
    ]
}

fn scale(q: Quaternion) -> f64 {
    1.0 + q.norm()
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in quat(), b in quat()) {
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() <= 1e-12 * scale(a) * scale(b));
    }

    #[test]
    fn product_is_associative(a in quat(), b in quat(), c in quat()) {
        let d = ((a * b) * c).max_abs_diff(a * (b * c));
        prop_assert!(d <= 1e-12 * scale(a) * scale(b) * scale(c));
    }

    #[test]
    fn conjugate_reverses_products(a in quat(), b in quat()) {
        prop_assert!((a * b).conj().max_abs_diff(b.conj() * a.conj()) <= 1e-12 * scale(a) * scale(b));
    }

    #[test]
    fn hopf_projection_is_unit_and_phase_blind(u in unit(), phi in 0.0..std::f64::consts::TAU) {
        let p = hopf_project(u.get()).unwrap();
        prop_assert!((p.norm() - 1.0).abs() <= 1e-12);
        // The left complex phase exp(i phi) drops out of q^-1 i q.
        let shifted = hopf_project(Quaternion::exp_i(phi) * u.get()).unwrap();
        prop_assert!(p.max_abs_diff(shifted) <= 1e-12);
    }

    #[test]
    fn right_action_matches_su2_matrix(q in quat(), u in unit()) {
        let via_q = su2_right_action(q, u).to_pair().to_vector();
        let via_m = su2_matrix(u) * q.to_pair().to_vector();
        prop_assert!((via_q - via_m).norm() <= 1e-12 * scale(q));
    }

    #[test]
    fn apply_site_matches_kronecker(
        (field, n, site, op, s) in (field(), 1usize..4)
            .prop_flat_map(|(f, n)| (Just(f), Just(n), 0..n, site_matrix(f), state(f, n)))
    ) {
        let site_op = SiteOperator::new(site, op.clone()).unwrap();
        let fast = apply_site(&site_op, &s).unwrap();
        let d = field.site_dim();
        let mut factors = vec![LinearMap::identity(field, d); n];
        factors[site] = op;
        let full = tensor_op(&factors).unwrap();
        let slow = full.apply(&s).unwrap();
        prop_assert!(fast.max_abs_diff(&slow).unwrap() <= 1e-12 * (1.0 + s.norm()) * 10.0);
    }

    #[test]
    fn completion_is_orthonormal(
        (field, vs) in field().prop_flat_map(|f| (Just(f), prop::collection::vec(state(f, 2), 1..4)))
    ) {
        let Ok(basis) = complete_orthonormal(&vs, 1e-10) else {
            // Random draws are almost never dependent; skip if one is.
            return Ok(());
        };
        let dim = field.site_dim().pow(2);
        prop_assert_eq!(basis.len(), dim);
        for a in 0..dim {
            for b in 0..dim {
                let want = if a == b { 1.0 } else { 0.0 };
                prop_assert!((inner(&basis[a], &basis[b]).unwrap() - want).norm() <= 1e-10);
            }
        }
        // The leading vectors span the inputs in order.
        let first = vs[0].normalized().unwrap();
        prop_assert!((inner(&basis[0], &first).unwrap().norm() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn isometry_preserves_inner_products(u in unit(), a in state(ScalarField::QuaternionR4, 1), b in state(ScalarField::QuaternionR4, 1)) {
        let m = eqec_core::codes::su2_error(u, 0);
        prop_assert!(is_isometry(m.op(), 1e-12).is_isometry);
        let ua = apply_site(&m, &a).unwrap();
        let ub = apply_site(&m, &b).unwrap();
        let d = (inner(&ua, &ub).unwrap() - inner(&a, &b).unwrap()).norm();
        prop_assert!(d <= 1e-11 * (1.0 + a.norm()) * (1.0 + b.norm()));
    }

    #[test]
    fn correspondence_on_random_pairs(q in quat(), e in unit()) {
        let gens = error_generators(&build_gammas_majorana());
        let r = quaternion_correspondence(ErrorRotor::from_quaternion(e.get()), q, &gens);
        prop_assert!(r.max_deviation() <= 1e-12 * scale(q));
    }

    #[test]
    fn clifford_relations_survive_any_unitary(v in prop::collection::vec(complex(), 16)) {
        let m = DMatrix::from_fn(4, 4, |r, c| v[r * 4 + c]);
        let (q, _) = m.qr().unpack();
        let u = Matrix4c::from_fn(|r, c| q[(r, c)]);
        prop_assume!(unitarity_deviation(&u) < 1e-12);
        let g = transform_basis(&build_gammas_standard(), &u, "random").unwrap();
        prop_assert!(clifford_check(&g).passes(1e-12));
    }
}

#[test]
fn kl_verdicts_for_both_h3_variants() {
    let r3 = build_r3_code();
    assert!(kl_check(&r3, &effective_error_basis(&r3, ErrorFamily::So2).unwrap(), 1e-12).unwrap().passes());
    for second in [H3Second::I, H3Second::J] {
        let h3 = build_h3_code(second);
        let r = kl_check(&h3, &effective_error_basis(&h3, ErrorFamily::Su2).unwrap(), 1e-12).unwrap();
        assert!(r.passes());
        assert!(r.max_gram_off_diagonal().unwrap() <= 1e-12);
    }
}
