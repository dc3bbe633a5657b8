use eqec_core::linalg::{
    apply_site, complete_orthonormal, inner, is_isometry, tensor_op, LinearMap, ScalarField, SiteOperator,
    StateVector,
};
use eqec_core::rng::{gaussian, trial_rng, TrialRng};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::config::RunConfig;
use crate::report::{CheckRecord, SuiteReport};

use super::{random_scalar, random_state, stream};

const FIELDS: [ScalarField; 3] = [ScalarField::Real, ScalarField::Complex, ScalarField::QuaternionR4];

fn random_isometry(rng: &mut TrialRng, field: ScalarField, n_sites: usize) -> Option<LinearMap> {
    let dim = field.site_dim().pow(n_sites as u32);
    let seeds: Vec<StateVector> = (0..dim).map(|_| random_state(rng, field, n_sites)).collect();
    let basis = complete_orthonormal(&seeds, 1e-10).ok()?;
    let m = DMatrix::from_fn(dim, dim, |r, c| basis[c].amplitudes()[r]);
    LinearMap::new(field, m).ok()
}

fn random_site_op(rng: &mut TrialRng, field: ScalarField) -> LinearMap {
    let d = field.site_dim();
    let m = DMatrix::from_fn(d, d, |_, _| random_scalar(rng, field));
    LinearMap::new(field, m).expect("field-valued entries")
}

pub fn run(cfg: &RunConfig) -> SuiteReport {
    let mut r = SuiteReport::new("linalg", cfg.seed, cfg.trials);
    let n = cfg.trials;
    let mut rng = trial_rng(cfg.seed, stream::LINALG);

    let mut iso_dev = 0.0f64;
    let mut iso_ok = true;
    for t in 0..n {
        let field = FIELDS[t % 3];
        let Some(u) = random_isometry(&mut rng, field, 2) else {
            iso_ok = false;
            continue;
        };
        let rep = is_isometry(&u, 1e-10);
        iso_ok &= rep.is_isometry;
        let (a, b) = (random_state(&mut rng, field, 2), random_state(&mut rng, field, 2));
        let before = inner(&a, &b).expect("same shape");
        let after = inner(&u.apply(&a).expect("square"), &u.apply(&b).expect("square")).expect("same shape");
        iso_dev = iso_dev.max((after - before).norm() / (1.0 + a.norm() * b.norm()));
    }
    r.push(CheckRecord::positive(
        "isometry_inner_products",
        "isometries preserve inner products",
        iso_ok && iso_dev <= cfg.tol(1e-10),
        iso_dev,
        cfg.tol(1e-10),
    ));

    let mut bil = 0.0f64;
    for t in 0..n {
        let field = FIELDS[t % 3];
        let (u, v, w) = (
            random_state(&mut rng, field, 1),
            random_state(&mut rng, field, 1),
            random_state(&mut rng, field, 2),
        );
        let a = random_scalar(&mut rng, field);
        let lhs = u.scale(a).and_then(|ua| ua.add(&v)).and_then(|s| s.tensor(&w));
        let rhs = u
            .tensor(&w)
            .and_then(|x| x.scale(a))
            .and_then(|x| v.tensor(&w).and_then(|y| x.add(&y)));
        let rhs2 = w
            .tensor(&u)
            .and_then(|x| x.scale(a))
            .and_then(|x| w.tensor(&v).and_then(|y| x.add(&y)));
        let lhs2 = u.scale(a).and_then(|ua| ua.add(&v)).and_then(|s| w.tensor(&s));
        match (lhs, rhs, lhs2, rhs2) {
            (Ok(l), Ok(rr), Ok(l2), Ok(r2)) => {
                let s = 1.0 + (u.norm() + v.norm()) * w.norm() * (1.0 + a.norm());
                bil = bil
                    .max(l.max_abs_diff(&rr).expect("same shape") / s)
                    .max(l2.max_abs_diff(&r2).expect("same shape") / s);
            }
            _ => bil = f64::NAN,
        }
    }
    r.push(CheckRecord::within("tensor_bilinear", "tensor product states", bil, cfg.tol(1e-12)));

    let mut site = 0.0f64;
    for t in 0..n {
        let field = FIELDS[t % 3];
        let max_sites = if field == ScalarField::QuaternionR4 { 3 } else { 6 };
        let n_sites = rng.random_range(1..=max_sites);
        let k = rng.random_range(0..n_sites);
        let op = random_site_op(&mut rng, field);
        let s = random_state(&mut rng, field, n_sites);
        let fast = apply_site(&SiteOperator::new(k, op.clone()).expect("site sized"), &s).expect("in range");
        let mut factors = vec![LinearMap::identity(field, field.site_dim()); n_sites];
        factors[k] = op;
        let slow = tensor_op(&factors).and_then(|m| m.apply(&s)).expect("consistent shapes");
        site = site.max(fast.max_abs_diff(&slow).expect("same shape") / (1.0 + s.norm()));
    }
    r.push(CheckRecord::within("apply_site_kronecker", "single-site operators on tensor states", site, cfg.tol(1e-12)));

    let mut gs = 0.0f64;
    let mut gs_ok = true;
    for t in 0..n.min(200) {
        let field = FIELDS[t % 3];
        let dim = field.site_dim().pow(2);
        let k = rng.random_range(1..dim);
        let mut vs: Vec<StateVector> = (0..k).map(|_| random_state(&mut rng, field, 2)).collect();
        if k + 1 < dim && gaussian(&mut rng) > 0.0 {
            // A nearly dependent extra vector exercises the second pass.
            let nudge = random_state(&mut rng, field, 2);
            let near = vs[0]
                .add(&nudge.scale(Complex64::new(1e-7, 0.0)).expect("real scalar"))
                .expect("same shape");
            vs.push(near);
        }
        let Ok(basis) = complete_orthonormal(&vs, 1e-12) else {
            gs_ok = false;
            continue;
        };
        gs_ok &= basis.len() == dim;
        for a in 0..basis.len() {
            for b in 0..basis.len() {
                let want = if a == b { 1.0 } else { 0.0 };
                gs = gs.max((inner(&basis[a], &basis[b]).expect("same shape") - want).norm());
            }
        }
        // Every input lies in the span of the leading vectors.
        for v in &vs {
            let mut rest = v.clone();
            for b in basis.iter().take(vs.len()) {
                let c = inner(b, &rest).expect("same shape");
                rest = rest.sub(&b.scale(c).expect("field scalar")).expect("same shape");
            }
            gs = gs.max(rest.norm() / (1.0 + v.norm()));
        }
    }
    r.push(CheckRecord::positive(
        "completion_orthonormal",
        "Gram-Schmidt completion",
        gs_ok && gs <= cfg.tol(1e-10),
        gs,
        cfg.tol(1e-10),
    ));
    r
}
