use eqec_core::quaternion::{
    classify_pauli_action, compose, compose_matrix, decompose_matrix, hopf_project, su2_matrix, su2_right_action,
    PauliAxis, Quaternion, UnitQuaternion,
};
use eqec_core::rng::{angle, quaternion, trial_rng, unit_quaternion};
use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::config::RunConfig;
use crate::report::{CheckRecord, SuiteReport};

use super::stream;

pub fn run(cfg: &RunConfig) -> SuiteReport {
    let mut r = SuiteReport::new("quaternion", cfg.seed, cfg.trials);
    let n = cfg.trials;

    let mut rng = trial_rng(cfg.seed, stream::QUATERNION);
    let mut mult = 0.0f64;
    let mut assoc = 0.0f64;
    for _ in 0..10 * n {
        let (q, h, v) = (quaternion(&mut rng), quaternion(&mut rng), quaternion(&mut rng));
        let d = (q.norm() * h.norm() - (q * h).norm()).abs() / (1.0 + q.norm() * h.norm());
        mult = mult.max(d);
        let s = (1.0 + q.norm()) * (1.0 + h.norm()) * (1.0 + v.norm());
        assoc = assoc.max(((q * h) * v).max_abs_diff(q * (h * v)) / s);
    }
    r.push(CheckRecord::within("multiplicativity", "norm of a product", mult, cfg.tol(1e-12)));
    r.push(CheckRecord::within("associativity", "Hamilton product", assoc, cfg.tol(1e-12)));

    let mut rot = 0.0f64;
    for _ in 0..n {
        let u = unit_quaternion(&mut rng);
        let v = quaternion(&mut rng).imag();
        rot = rot.max((u.rotate(v).norm() - v.norm()).abs() / (1.0 + v.norm()));
        if let Some(axis) = u.axis() {
            rot = rot.max(u.rotate(axis).max_abs_diff(axis));
        }
    }
    r.push(CheckRecord::within("rotation", "rotation of imaginary vectors", rot, cfg.tol(1e-12)));

    let mut su2 = 0.0f64;
    let basis_units = Quaternion::BASIS.map(|b| UnitQuaternion::new(b).expect("unit"));
    let mut pairs: Vec<(Quaternion, UnitQuaternion)> = Quaternion::BASIS
        .iter()
        .flat_map(|&q| basis_units.iter().map(move |&u| (q, u)))
        .collect();
    pairs.extend((0..n).map(|_| (quaternion(&mut rng), unit_quaternion(&mut rng))));
    for (q, u) in pairs {
        let a = su2_right_action(q, u).to_pair().to_vector();
        let b = su2_matrix(u) * q.to_pair().to_vector();
        su2 = su2.max((a - b).iter().map(|z| z.norm()).fold(0.0, f64::max) / (1.0 + q.norm()));
    }
    r.push(CheckRecord::within("su2_right_action", "SU(2) as right multiplication", su2, cfg.tol(1e-12)));

    let mut phase = 0.0f64;
    let mut equiv = 0.0f64;
    for _ in 0..n {
        let q = quaternion(&mut rng);
        let phi = angle(&mut rng);
        let u = unit_quaternion(&mut rng);
        let (Ok(v), Ok(vp), Ok(vu)) = (
            hopf_project(q),
            hopf_project(Quaternion::exp_i(phi) * q),
            hopf_project(q * u.get().conj()),
        ) else {
            continue;
        };
        phase = phase.max(v.max_abs_diff(vp)).max((v.norm() - 1.0).abs());
        equiv = equiv.max(u.rotate(v).max_abs_diff(vu));
    }
    r.push(CheckRecord::within("hopf_phase", "projection ignores the phase", phase, cfg.tol(1e-12)));
    r.push(CheckRecord::within("hopf_equivariance", "projection rotates with SU(2)", equiv, cfg.tol(1e-12)));

    let mut dec = 0.0f64;
    for u in Quaternion::BASIS {
        for w in Quaternion::BASIS {
            let d = decompose_matrix(&compose_matrix(u, w));
            dec = dec.max(d.u.max_abs_diff(u)).max(d.w.max_abs_diff(w)).max(d.residual);
        }
    }
    let z = Complex64::new(0.0, 0.0);
    let mut mats = Vec::new();
    for k in 0..4 {
        for s in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)] {
            let mut m = Matrix2::from_element(z);
            m[(k / 2, k % 2)] = s;
            mats.push(m);
        }
    }
    mats.extend((0..n).map(|_| {
        let a = quaternion(&mut rng).to_array();
        let b = quaternion(&mut rng).to_array();
        Matrix2::new(
            Complex64::new(a[0], a[1]),
            Complex64::new(a[2], a[3]),
            Complex64::new(b[0], b[1]),
            Complex64::new(b[2], b[3]),
        )
    }));
    for m in &mats {
        let d = decompose_matrix(m);
        let back = d.to_matrix();
        let q = quaternion(&mut rng);
        dec = dec
            .max(d.residual)
            .max((back - m).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .max(d.apply(q).max_abs_diff(compose(d.u, d.w, q)));
    }
    r.push(CheckRecord::within("decompose_compose", "complex matrices as q u + i q w", dec, cfg.tol(1e-10)));

    let samples: Vec<Quaternion> = (0..n).map(|_| quaternion(&mut rng)).collect();
    for axis in PauliAxis::ALL {
        let id = format!("pauli_action_{axis}");
        let tol = cfg.tol(1e-12);
        let first = classify_pauli_action(axis, &samples, tol);
        let again = classify_pauli_action(axis, &samples, tol);
        match first {
            Some(c) => {
                let stable = again.map(|a| (a.target, a.phase)) == Some((c.target, c.phase));
                r.push(
                    CheckRecord::positive(&id, "Pauli matrices from quaternion sandwiches", stable, c.max_deviation, tol)
                        .with_witness(format!("acts as {} with phase {:.6}", c.target, c.phase)),
                );
            }
            None => r.push(
                CheckRecord::positive(&id, "Pauli matrices from quaternion sandwiches", false, f64::NAN, tol)
                    .with_witness("no single Pauli matrix and phase fits every sample"),
            ),
        }
    }
    r
}
