//! The `simulate` and `demo` commands.

use eqec_core::codes::simulate::{simulate, CodeSetup, TrialKind};
use eqec_core::codes::{
    build_b3_code, effective_classes, effective_error_basis, kl_check, phase_failure_demo, ErrorFamily, H3Second,
};
use eqec_core::quaternion::{hopf_project, ImaginaryVector, Quaternion};
use num_complex::Complex64;

use crate::config::{DemoName, RunConfig, SimCode};
use crate::report::{CheckRecord, SuiteReport};
use crate::suites::codes::{push_result, ANCHOR_LINEAR, ANCHOR_PHASE, ANCHOR_SHOR};
use crate::suites::fmt_complex;

pub fn cmd_simulate(code: SimCode, cfg: &RunConfig) -> SuiteReport {
    let (name, setup) = match code {
        SimCode::R3 => ("r3", CodeSetup::r3()),
        SimCode::H3 => ("h3", CodeSetup::h3(H3Second::J)),
        SimCode::Shor9 => ("shor9", CodeSetup::shor9()),
    };
    let mut r = SuiteReport::new(format!("simulate {name}"), cfg.seed, cfg.trials);
    let setup = match setup {
        Ok(s) => s,
        Err(e) => {
            r.push(CheckRecord::errored("synthesis", ANCHOR_LINEAR, e));
            return r;
        }
    };
    let kl_tol = cfg.tol(1e-12);
    push_result(&mut r, "kl_conditions", ANCHOR_LINEAR, kl_check(&setup.code, &setup.errors, kl_tol), |r, k| {
        r.push(
            CheckRecord::positive("kl_conditions", ANCHOR_LINEAR, k.passes(), k.max_deviation(), kl_tol)
                .with_witness(format!("{} errors in the family basis", setup.errors.len())),
        );
    });
    r.note(format!(
        "{}: {} {} sites, {} codewords, {} ancilla sites, {} synthesized error classes",
        setup.code.name(),
        setup.code.n_sites(),
        setup.code.field(),
        setup.code.codewords().len(),
        setup.map.n_ancilla(),
        setup.map.error_labels().len()
    ));
    let tol = cfg.tol(1e-10);
    for (id, kind) in [("single_site_errors", TrialKind::SingleSite), ("linear_combinations", TrialKind::Combination)] {
        push_result(&mut r, id, ANCHOR_LINEAR, simulate(&setup, kind, cfg.seed, cfg.trials), |r, s| {
            let dev = s
                .fidelity_deviation()
                .max(s.max_residual)
                .max(s.max_ancilla_deviation)
                .max(s.max_logical_deviation);
            r.push(
                CheckRecord::positive(id, ANCHOR_LINEAR, s.unmatched == 0 && dev <= tol, dev, tol).with_witness(format!(
                    "min fidelity {}, max factorization residual {:e}",
                    s.min_fidelity, s.max_residual
                )),
            );
        });
    }
    r
}

fn fmt_vec(v: ImaginaryVector) -> String {
    format!("({}, {}, {})", v.x, v.y, v.z)
}

pub fn cmd_demo(name: DemoName, cfg: &RunConfig) -> SuiteReport {
    match name {
        DemoName::PhaseFailure => phase_failure(cfg),
        DemoName::EffectiveCount => effective_count(cfg),
        DemoName::Hopf => hopf(cfg),
    }
}

fn phase_failure(cfg: &RunConfig) -> SuiteReport {
    let mut r = SuiteReport::new("demo phase-failure", cfg.seed, cfg.trials);
    let tol = cfg.tol(1e-12);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let cases = [
        ("basis_state", [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], true),
        ("balanced_state", [Complex64::new(h, 0.0), Complex64::new(h, 0.0)], false),
    ];
    for (id, ab, benign) in cases {
        push_result(&mut r, id, ANCHOR_PHASE, phase_failure_demo(ab, tol), |r, rep| {
            let [a, b] = rep.logical;
            let [ia, mib] = rep.mimicked;
            r.note(format!(
                "E_pi on any site maps encode({}, {}) to encode({}, {}); overlap with the original {}, {}",
                fmt_complex(a),
                fmt_complex(b),
                fmt_complex(ia),
                fmt_complex(mib),
                rep.overlap,
                if rep.physically_equivalent {
                    "the same physical state"
                } else {
                    "a different physical state that no correction can tell apart"
                }
            ));
            r.push(CheckRecord::positive(
                id,
                ANCHOR_PHASE,
                rep.physically_equivalent == benign && rep.max_residual() <= tol,
                rep.max_residual(),
                tol,
            ));
            if id == "balanced_state" {
                let (m, n) = rep.witness.unwrap_or_default();
                r.push(
                    CheckRecord::expected_failure("kl_conditions", ANCHOR_PHASE, rep.kl.passes(), rep.kl.max_deviation(), tol)
                        .with_witness(format!("diagonal values {} and {}", fmt_complex(m), fmt_complex(n))),
                );
            }
        });
    }
    r
}

fn effective_count(cfg: &RunConfig) -> SuiteReport {
    let mut r = SuiteReport::new("demo effective-count", cfg.seed, cfg.trials);
    let code = build_b3_code();
    let tol = cfg.tol(1e-12);
    let res = effective_error_basis(&code, ErrorFamily::PauliPerSite)
        .and_then(|set| effective_classes(&code, &set, tol).map(|c| (set, c)));
    push_result(&mut r, "b3_effective_errors", ANCHOR_SHOR, res, |r, (set, classes)| {
        let labels: Vec<String> = set.labels().map(str::to_owned).collect();
        for class in classes.iter().skip(1) {
            let names: Vec<&str> = class.iter().map(|&p| labels[p].as_str()).collect();
            r.note(format!("class {{{}}}", names.join(", ")));
        }
        let n = classes.len() - 1;
        r.note(format!("{n} effective errors out of {} single-qubit Paulis", set.len() - 1));
        r.push(
            CheckRecord::positive("b3_effective_errors", ANCHOR_SHOR, n == 7, (n as f64 - 7.0).abs(), 0.0)
                .with_witness(format!("count = {n}")),
        );
    });
    r
}

fn hopf(cfg: &RunConfig) -> SuiteReport {
    let mut r = SuiteReport::new("demo hopf", cfg.seed, cfg.trials);
    let tol = cfg.tol(1e-12);
    let expected = [
        ("1", Quaternion::ONE, ImaginaryVector::new(1.0, 0.0, 0.0)),
        ("i", Quaternion::I, ImaginaryVector::new(1.0, 0.0, 0.0)),
        ("j", Quaternion::J, ImaginaryVector::new(-1.0, 0.0, 0.0)),
        ("k", Quaternion::K, ImaginaryVector::new(-1.0, 0.0, 0.0)),
    ];
    for (name, q, want) in expected {
        let id = format!("hopf_{name}");
        match hopf_project(q) {
            Ok(v) => {
                r.note(format!("{name} -> {}", fmt_vec(v)));
                r.push(CheckRecord::within(&id, "Hopf projection q^-1 i q", v.max_abs_diff(want), tol));
            }
            Err(e) => r.push(CheckRecord::errored(&id, "Hopf projection q^-1 i q", e)),
        }
    }
    r
}
