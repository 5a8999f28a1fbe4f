//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (visible with `--nocapture`). Every tolerance is pinned
//! here; the exact criteria run at tolerance zero.

use coulombnd::model::System;
use coulombnd::rational::{rat, rint, Rational};
use coulombnd::verify::{
    run_check, suite_for, CheckKind, CheckParams, CheckSpec, CheckStatus, SuiteConfig,
};

fn p_family(kind: usize, n: usize) -> Vec<Rational> {
    match kind {
        0 => vec![Rational::from_integer(0.into()); n - 1],
        1 => (0..n - 1).map(|i| rat(1, i as i64 + 2)).collect(),
        _ => (0..n - 1).map(|i| rint(i as i64 + 2)).collect(),
    }
}

fn base_spec(name: &str, kind: CheckKind, n: usize, gamma: Rational, p: Vec<Rational>) -> CheckSpec {
    CheckSpec {
        name: name.to_string(),
        kind,
        params: CheckParams {
            n,
            gamma,
            p,
            system: None,
            qmax: 4,
            points: 20,
            detail: String::new(),
        },
        seed: 0xACCE97,
        tolerance: 0.0,
    }
}

fn report_line(criterion: &str, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} {detail}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

// 1. The gauge-rotated parabolic family acts on every polynomial part with
// exactly the printed eigen-relations, zero residual, for n in 3..=6, three
// exponent families, two couplings, and all states up to level 6.
#[test]
fn criterion_1_exact_gauged_eigen_actions() {
    let mut worst_scope = String::new();
    let mut all_ok = true;
    for n in 3..=6usize {
        for pk in 0..3 {
            for gamma in [rint(1), rat(3, 2)] {
                let mut spec = base_spec(
                    "acceptance/exact-eigen",
                    CheckKind::ExactEigen,
                    n,
                    gamma.clone(),
                    p_family(pk, n),
                );
                spec.params.system = Some(System::Parabolic);
                spec.params.qmax = 6;
                let report = run_check(&spec);
                if report.status != CheckStatus::Pass {
                    all_ok = false;
                    worst_scope = format!(
                        "n={n} p-family {pk} gamma={gamma}: {:?} {}",
                        report.status,
                        report.witness.unwrap_or_default()
                    );
                }
            }
        }
    }
    report_line(
        "1 (exact gauged eigen-actions)",
        all_ok,
        if all_ok {
            "zero residual over 24 parameter sets, q <= 6"
        } else {
            &worst_scope
        },
    );
}

// 2. The ladder operator acts tridiagonally with the printed coefficients
// (edge indices via the zero convention) and preserves the level flag, for
// all N1, N2 <= 6 and ten rational parameter values. Zero tolerance.
#[test]
fn criterion_2_tridiagonal_ladder() {
    let mut spec = base_spec(
        "acceptance/tridiagonal",
        CheckKind::Tridiagonal,
        3,
        rint(1),
        p_family(0, 3),
    );
    spec.params.qmax = 6;
    let r3 = run_check(&spec);
    spec.params.n = 6; // exercises the dimension constant as well
    spec.params.p = p_family(1, 6);
    let r6 = run_check(&spec);
    let ok = r3.status == CheckStatus::Pass && r6.status == CheckStatus::Pass;
    report_line(
        "2 (tridiagonal ladder action)",
        ok,
        &format!(
            "n=3 {:?}, n=6 {:?}{}",
            r3.status,
            r6.status,
            r3.witness
                .or(r6.witness)
                .map(|w| format!(" [{w}]"))
                .unwrap_or_default()
        ),
    );
}

// 3. Numeric eigen-equations in the original coordinates for n in 3..=5 and
// q <= 4: 20 seeded points per state at relative tolerance 1e-8, plus one
// exact rational point per state with residual identically zero.
#[test]
fn criterion_3_numeric_eigen_equations() {
    let mut all_ok = true;
    let mut detail = String::new();
    let mut worst = 0.0f64;
    for n in 3..=5usize {
        for gamma in [rint(1), rat(3, 2)] {
            for (system, label) in [
                (System::Parabolic, "parabolic"),
                (System::Spherical, "spherical"),
            ] {
                let mut spec = base_spec(
                    "acceptance/numeric-eigen",
                    CheckKind::NumericEigen,
                    n,
                    gamma.clone(),
                    p_family(1, n),
                );
                spec.params.system = Some(system);
                spec.tolerance = 1e-8;
                let report = run_check(&spec);
                worst = worst.max(report.worst_residual);
                if report.status != CheckStatus::Pass {
                    all_ok = false;
                    detail = format!(
                        "n={n} gamma={gamma} {label}: {:?} {}",
                        report.status,
                        report.witness.unwrap_or_default()
                    );
                }
            }
        }
    }
    report_line(
        "3 (numeric eigen-equations)",
        all_ok,
        &if all_ok {
            format!("worst float residual {worst:.3e} (tolerance 1e-8); exact points identically zero")
        } else {
            detail
        },
    );
}

// 4. Commutator suite for n in 3..=5 at tolerance 1e-6 on seeded polynomial
// test jets, including the closure identity of the Runge-Lenz sector and
// detection (>= 1e-3) of the two pairs that must not commute.
#[test]
fn criterion_4_commutator_suite() {
    let mut all_ok = true;
    let mut detail = String::new();
    for n in 3..=5usize {
        let mut cfg = SuiteConfig::new(n, rint(1), p_family(1, n), 0xACCE97);
        cfg.points = 5;
        let specs = suite_for(coulombnd::verify::SuiteSelector::Commutators, &cfg).unwrap();
        for spec in &specs {
            let report = run_check(spec);
            if report.status != CheckStatus::Pass {
                all_ok = false;
                detail = format!(
                    "n={n} {}: {:?} {}",
                    report.name,
                    report.status,
                    report.witness.unwrap_or_default()
                );
            }
        }
    }
    report_line(
        "4 (commutator suite)",
        all_ok,
        if all_ok {
            "vanishing families <= 1e-6; nonzero pairs detected >= 1e-3"
        } else {
            &detail
        },
    );
}

// 5. The exact energy sets of the two families coincide for n = 3, 4 up to
// level 8, and the enumerated per-level count relation holds.
#[test]
fn criterion_5_spectrum_set_equality() {
    let mut all_ok = true;
    let mut detail = String::new();
    for n in [3usize, 4] {
        let mut spec = base_spec(
            "acceptance/spectrum-set",
            CheckKind::SpectrumSet,
            n,
            rat(3, 2),
            p_family(1, n),
        );
        spec.params.qmax = 8;
        let report = run_check(&spec);
        if report.status != CheckStatus::Pass {
            all_ok = false;
            detail = format!(
                "n={n}: {:?} {}",
                report.status,
                report.witness.unwrap_or_default()
            );
        }
    }
    // record the per-level counts for the report
    let params = coulombnd::model::ModelParams::coulomb(3, rint(1));
    let counts: Vec<String> = (0..=8u32)
        .map(|q| {
            let p = coulombnd::model::degeneracy(&params, System::Parabolic, q).0;
            let s = coulombnd::model::degeneracy(&params, System::Spherical, q).0;
            format!("q={q}:{p}/{s}")
        })
        .collect();
    report_line(
        "5 (cross-family spectrum sets)",
        all_ok,
        &if all_ok {
            format!("energy sets equal; n=3 level counts parabolic/spherical {}", counts.join(" "))
        } else {
            detail
        },
    );
}

// 6. The four three-dimensional commuting pairs, including the free
// constants a in {1, 2/3} and f in {1, 5/7}, commute within 1e-6 on five
// seeded test jets each.
#[test]
fn criterion_6_four_commuting_pairs() {
    let mut spec = base_spec(
        "acceptance/n3-pairs",
        CheckKind::CommutatorZero,
        3,
        rint(1),
        p_family(0, 3),
    );
    spec.params.detail = "n3-pairs".into();
    spec.params.points = 5;
    spec.tolerance = 1e-6;
    let report = run_check(&spec);
    let ok = report.status == CheckStatus::Pass;
    report_line(
        "6 (four n=3 commuting pairs)",
        ok,
        &format!(
            "worst residual {:.3e}{}",
            report.worst_residual,
            report.witness.map(|w| format!(" [{w}]")).unwrap_or_default()
        ),
    );
}

// 7. Every gauge-rotated operator carries a generator-decomposition
// witness over the first-order set that recomposes to the operator
// exactly, for n in 3..=6.
#[test]
fn criterion_7_generator_decomposition() {
    let mut all_ok = true;
    let mut detail = String::new();
    for n in 3..=6usize {
        let spec = base_spec(
            "acceptance/generator-decomposition",
            CheckKind::GeneratorDecomposition,
            n,
            rint(1),
            p_family(2, n),
        );
        let report = run_check(&spec);
        if report.status != CheckStatus::Pass {
            all_ok = false;
            detail = format!(
                "n={n}: {:?} {}",
                report.status,
                report.witness.unwrap_or_default()
            );
        }
    }
    report_line(
        "7 (generator decomposition witnesses)",
        all_ok,
        if all_ok { "witnesses recompose exactly for n=3..6" } else { &detail },
    );
}

// 8. Mutation sensitivity: a sign flip on the Coulomb term of any
// Hamiltonian builder, or a unit perturbation of a gauged operator
// coefficient, is caught by the corresponding check.
#[test]
fn criterion_8_mutation_sensitivity() {
    let targets = [
        "cartesian-h-gamma-sign",
        "parabolic-h-gamma-sign",
        "spherical-h-gamma-sign",
        "x-gamma-sign",
        "y1-constant",
        "ztilde-constant",
        "q-core-constant",
    ];
    let mut all_ok = true;
    let mut detail = String::new();
    for n in [3usize, 4] {
        for target in targets {
            let mut spec = base_spec(
                "acceptance/mutation",
                CheckKind::Mutation,
                n,
                rint(1),
                p_family(1, n),
            );
            spec.params.detail = target.into();
            let report = run_check(&spec);
            if report.status != CheckStatus::Pass {
                all_ok = false;
                detail = format!(
                    "n={n} {target}: {:?} {}",
                    report.status,
                    report.witness.unwrap_or_default()
                );
            }
        }
    }
    report_line(
        "8 (mutation sensitivity)",
        all_ok,
        if all_ok {
            "all seven corrupted builders detected, n=3 and n=4"
        } else {
            &detail
        },
    );
}
