//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its own line in the `cargo test` output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use eqec_cli::config::{Command, RunConfig, Target};
use eqec_cli::suites::codes::{first_site_check, rcorr_check};
use eqec_core::codes::simulate::{simulate, CodeSetup, TrialKind};
use eqec_core::codes::{
    build_b3_code, build_complex3_code, build_h3_code, build_shor9_code, count_effective_errors,
    effective_error_basis, kl_check, phase_error_pi, phase_failure_demo, CodeError, ErrorFamily, ErrorSet,
    H3Second, KlViolation,
};
use eqec_core::dirac::{
    bivectors, build_gammas_majorana, build_gammas_standard, build_majorana_transform, clifford_check,
    error_generators, majorana_targets, majorana_transform_reference, max_abs_diff, max_imag,
    quaternion_correspondence, sign_pattern_matrix, unitarity_deviation, ErrorRotor, MAJORANA_BIVECTORS,
};
use eqec_core::linalg::ScalarField;
use eqec_core::rng::{quaternion, trial_rng, unit_complex_coefficients, unit_quaternion};
use eqec_core::Quaternion;
use num_complex::Complex64;

const SEED: u64 = 42;
const TRIALS: usize = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rcorr_table() -> Result<Outcome, CodeError> {
    let (rows, iso) = rcorr_check(1e-12)?;
    Ok(outcome(
        rows == 0.0 && iso <= 1e-10,
        format!("row deviation {rows:e}, orthogonality {iso:e}"),
    ))
}

fn first_site() -> Result<Outcome, CodeError> {
    let (logical, fidelity, ancilla) = first_site_check(SEED, TRIALS)?;
    Ok(outcome(
        logical <= 1e-10 && fidelity <= 1e-10 && ancilla <= 1e-10,
        format!("logical {logical:e}, fidelity {fidelity:e}, ancilla {ancilla:e}"),
    ))
}

fn phase_failure() -> Result<Outcome, CodeError> {
    let set = ErrorSet::new(ScalarField::Complex).with("Epi@0", phase_error_pi(0))?;
    let kl = kl_check(&build_complex3_code(), &set, 1e-12)?;
    let witness = kl.violations.iter().find_map(|v| match *v {
        KlViolation::DiagonalMismatch { value_m, value_n, .. } => Some((value_m, value_n)),
        _ => None,
    });
    let exact = witness == Some((c(0.0, 1.0), c(0.0, -1.0)));
    let mut rng = trial_rng(SEED, 0);
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let ab = unit_complex_coefficients(&mut rng, 2);
        worst = worst.max(phase_failure_demo([ab[0], ab[1]], 1e-12)?.max_residual());
    }
    Ok(outcome(
        !kl.passes() && exact && worst <= 1e-12,
        format!("kl fails: {}, witness {witness:?}, max residual to encode(ia, -ib) {worst:e}", !kl.passes()),
    ))
}

fn h3_claim() -> Result<Outcome, CodeError> {
    let mut pass = true;
    let mut detail = Vec::new();
    for second in [H3Second::I, H3Second::J] {
        let code = build_h3_code(second);
        let set = effective_error_basis(&code, ErrorFamily::Su2)?;
        let kl = kl_check(&code, &set, 1e-12)?;
        let off = kl.max_gram_off_diagonal().unwrap_or(f64::INFINITY);
        pass &= set.len() == 10 && kl.passes() && off <= 1e-12;
        let setup = CodeSetup::h3(second)?;
        let dim = setup.map.code_dim() * setup.map.ancilla_dim();
        let s = simulate(&setup, TrialKind::SingleSite, SEED, TRIALS)?;
        pass &= dim == 1024 && s.unmatched == 0 && s.min_fidelity >= 1.0 - 1e-10;
        detail.push(format!(
            "{second:?}: {} errors, off-diagonal {off:e}, dim {dim}, min fidelity {}",
            set.len(),
            s.min_fidelity
        ));
    }
    Ok(outcome(pass, detail.join("; ")))
}

fn linear_combinations() -> Result<Outcome, CodeError> {
    let mut pass = true;
    let mut detail = Vec::new();
    for (name, setup) in [("r3", CodeSetup::r3()?), ("h3", CodeSetup::h3(H3Second::J)?)] {
        let s = simulate(&setup, TrialKind::Combination, SEED, TRIALS)?;
        let dev = s.max_residual.max(s.max_ancilla_deviation).max(s.max_logical_deviation);
        pass &= s.trials == TRIALS && s.unmatched == 0 && dev <= 1e-10;
        detail.push(format!("{name}: residual {:e}, factor deviation {dev:e}", s.max_residual));
    }
    Ok(outcome(pass, detail.join("; ")))
}

fn dirac_identities() -> Outcome {
    let standard = build_gammas_standard();
    let majorana = build_gammas_majorana();
    let clifford = clifford_check(&standard).max_deviation().max(clifford_check(&majorana).max_deviation());
    let u = build_majorana_transform();
    let entries = max_abs_diff(&u, &majorana_transform_reference());
    let unitary = unitarity_deviation(&u);
    let targets = majorana
        .all()
        .iter()
        .zip(majorana_targets().iter())
        .map(|(g, t)| max_abs_diff(g, t))
        .fold(0.0, f64::max);
    let gens = error_generators(&majorana);
    let real = gens.max_imag();
    let pattern = bivectors(&majorana)
        .iter()
        .zip(&MAJORANA_BIVECTORS)
        .map(|(b, p)| max_abs_diff(b, &sign_pattern_matrix(p)).max(max_imag(b)))
        .fold(0.0, f64::max);
    let mut corr = 0.0f64;
    for q in Quaternion::BASIS {
        for e in Quaternion::BASIS {
            corr = corr.max(quaternion_correspondence(ErrorRotor::from_quaternion(e), q, &gens).max_deviation());
        }
    }
    let mut rng = trial_rng(SEED, 1);
    for _ in 0..TRIALS {
        let q = quaternion(&mut rng);
        let e = ErrorRotor::from_quaternion(unit_quaternion(&mut rng).get());
        corr = corr.max(quaternion_correspondence(e, q, &gens).max_deviation() / (1.0 + q.norm()));
    }
    outcome(
        clifford <= 1e-12
            && entries <= 1e-15
            && unitary <= 1e-14
            && targets <= 1e-13
            && real <= 1e-14
            && pattern == 0.0
            && corr <= 1e-12,
        format!(
            "clifford {clifford:e}, U_M entries {entries:e}, unitary {unitary:e}, targets {targets:e}, \
             imaginary {real:e}, sign patterns {pattern:e}, correspondence {corr:e}"
        ),
    )
}

fn conclusion_counts() -> Result<Outcome, CodeError> {
    let b3 = build_b3_code();
    let n = count_effective_errors(&b3, &effective_error_basis(&b3, ErrorFamily::PauliPerSite)?, 1e-12)?;
    let shor = build_shor9_code();
    let set = effective_error_basis(&shor, ErrorFamily::PauliPerSite)?;
    let kl = kl_check(&shor, &set, 1e-12)?;
    Ok(outcome(
        n == 7 && set.len() == 28 && kl.passes(),
        format!(
            "B3 effective errors {n}, shor9 basis {} errors, kl deviation {:e}",
            set.len(),
            kl.max_deviation()
        ),
    ))
}

fn determinism() -> Outcome {
    let cfg = RunConfig::new(SEED, TRIALS);
    let command = Command::Verify { target: Target::All };
    let mut runs = [eqec_cli::run(&command, &cfg), eqec_cli::run(&command, &cfg)];
    for r in &mut runs {
        r.set_wall_time(Duration::ZERO);
    }
    let [a, b] = runs.map(|r| r.to_json());
    outcome(a == b, format!("{} bytes per report, identical: {}", a.len(), a == b))
}

fn flatten(r: Result<Outcome, CodeError>) -> Outcome {
    r.unwrap_or_else(|e| outcome(false, format!("error: {e}")))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("r3 correction table rows and orthogonal completion", Some(Duration::from_secs(1)), || flatten(rcorr_table())),
        ("r3 first-site rotation example", Some(Duration::from_secs(1)), || flatten(first_site())),
        ("phase error on complex3 breaks the KL conditions", None, || flatten(phase_failure())),
        ("h3 KL conditions and roundtrip fidelity", Some(Duration::from_secs(30)), || flatten(h3_claim())),
        ("linear combinations of errors factor out", None, || flatten(linear_combinations())),
        ("Dirac and Majorana identities", Some(Duration::from_secs(1)), dirac_identities),
        ("B3 effective count and shor9 KL conditions", Some(Duration::from_secs(5)), || flatten(conclusion_counts())),
        ("verify all is deterministic", None, determinism),
    ];
    let mut failed = 0;
    for (n, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let limit = limit.map(|l| format!(" (limit {}s)", l.as_secs())).unwrap_or_default();
        println!(
            "criterion {} {name}: {} in {:.3}s{limit}\n    {}",
            n + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            out.detail
        );
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
