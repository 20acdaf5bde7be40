use super::suites::dpi_checks;
use super::*;
use crate::conditional::OptimizerConfig;
use crate::divergence::{d_old, d_sandwiched};
use crate::layout::SubsystemLayout;
use crate::objects::{random_density, KrausChannel};
use crate::operator::holder_pair_check;

fn a(v: f64) -> Alpha {
    Alpha::from_value(v).unwrap()
}

fn expect_invalid(spec: SuiteSpec) -> String {
    match run(&spec) {
        Err(Error::InvalidSuite(m)) => m,
        other => panic!("expected an invalid suite, got {other:?}"),
    }
}

#[test]
fn suite_names_parse_in_several_spellings() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert_eq!("DUALITY_1".parse::<Suite>().unwrap(), Suite::Duality1);
    assert_eq!(
        "MAASSEN_UFFINK".parse::<Suite>().unwrap(),
        Suite::MaassenUffink
    );
    assert_eq!(
        "monotone_alpha".parse::<Suite>().unwrap(),
        Suite::MonotoneAlpha
    );
    assert_eq!("MOSONYI".parse::<Suite>().unwrap(), Suite::ConverseBound);
    assert!("duality4".parse::<Suite>().is_err());
}

#[test]
fn default_grid_is_filtered_by_range() {
    let d1 = SuiteSpec::new(Suite::Duality1).resolved_alphas();
    assert_eq!(
        d1.iter().map(|x| x.value()).collect::<Vec<_>>(),
        [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0]
    );
    let d2 = SuiteSpec::new(Suite::Duality2).resolved_alphas();
    assert_eq!(d2.first(), Some(&Alpha::Finite(0.5)));
    assert_eq!(d2.last(), Some(&Alpha::Infinity));
    assert_eq!(SuiteSpec::new(Suite::Duality3).resolved_alphas().len(), 9);
    let holder = SuiteSpec::new(Suite::Holder).resolved_alphas();
    assert!(holder.iter().all(|p| matches!(p, Alpha::Finite(_))));
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(
        expect_invalid(SuiteSpec::new(Suite::Duality1).alphas(&[a(2.5)]))
            .contains("outside the valid range")
    );
    assert!(expect_invalid(SuiteSpec::new(Suite::Duality2).alphas(&[a(0.25)])).contains("outside"));
    assert!(
        expect_invalid(SuiteSpec::new(Suite::Uncertainty3).alphas(&[Alpha::Infinity]))
            .contains("outside")
    );
    assert!(expect_invalid(SuiteSpec::new(Suite::Duality1).trials(0)).contains("trials"));
    assert!(expect_invalid(SuiteSpec::new(Suite::Duality1).dims(&[2, 2])).contains("3 dimensions"));
    assert!(expect_invalid(SuiteSpec::new(Suite::Ordering).dims(&[2, 0])).contains("positive"));
    assert!(expect_invalid(SuiteSpec::new(Suite::Ordering).dims(&[9, 9])).contains("exceeds"));
    assert!(
        expect_invalid(SuiteSpec::new(Suite::MonotoneAlpha).alphas(&[a(2.0)]))
            .contains("two orders")
    );
    assert!(expect_invalid(SuiteSpec::new(Suite::Duality1).tolerance(-1.0)).contains("tolerance"));
    assert!(
        expect_invalid(SuiteSpec::new(Suite::Uncertainty1).dims(&[1, 2, 2])).contains("at least 2")
    );
    let m = Povm::computational(3);
    let spec = SuiteSpec::new(Suite::Uncertainty1).trials(1);
    assert!(matches!(
        run_with_measurements(&spec, &m, &m),
        Err(Error::InvalidSuite(_))
    ));
}

#[test]
fn residual_signs() {
    assert_eq!(Relation::Equal.residual(1.0, 1.5), 0.5);
    assert_eq!(Relation::AtMost.residual(1.0, 1.5), -0.5);
    assert_eq!(Relation::AtLeast.residual(1.0, 1.5), 0.5);
    assert_eq!(Relation::AtMost.residual(f64::INFINITY, f64::INFINITY), 0.0);
    assert!(Relation::AtMost.residual(f64::INFINITY, f64::NEG_INFINITY) > 0.0);
}

#[test]
fn von_neumann_duality_on_two_three_two() {
    let spec = SuiteSpec::new(Suite::Duality1)
        .dims(&[2, 3, 2])
        .alphas(&[Alpha::One, a(1.5)])
        .trials(100);
    let report = run(&spec).unwrap();
    assert_eq!(report.summary.checks, 200);
    assert!(report.passed(), "{report}");
    assert!(report.summary.max_residual < 1e-9, "{report}");
}

#[test]
fn third_duality_endpoints() {
    let spec = SuiteSpec::new(Suite::Duality3)
        .alphas(&[Alpha::Zero, Alpha::Infinity, a(0.25), a(4.0)])
        .trials(40)
        .seed(7);
    let report = run(&spec).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.summary.max_residual < 1e-8);
}

#[test]
fn reports_are_reproducible() {
    let spec = SuiteSpec::new(Suite::Ordering)
        .alphas(&[a(0.5), a(2.0)])
        .trials(12)
        .seed(3);
    let first = run(&spec).unwrap();
    let second = run(&spec).unwrap();
    assert_eq!(first.trials_json(), second.trials_json());
    let other = run(&spec.clone().seed(4)).unwrap();
    assert_ne!(first.trials[0].digest, other.trials[0].digest);
    let value: serde_json::Value = serde_json::from_str(&first.to_json()).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["suite"]["suite"], "ordering");
    assert!(value["summary"]["max_residual"].is_number());
}

#[test]
fn tolerance_override_applies_to_every_check() {
    let spec = SuiteSpec::new(Suite::Duality1)
        .alphas(&[a(0.5)])
        .trials(3)
        .tolerance(0.0);
    let report = run(&spec).unwrap();
    assert!(report.trials.iter().all(|r| r.tolerance == 0.0));
}

#[test]
fn identity_channel_gives_equality() {
    let layout = SubsystemLayout::from_dims(&[2, 2]).unwrap();
    let mut rng = SeededRng::new(5);
    let rho = random_density(&layout, 4, &mut rng).unwrap();
    let sigma = random_density(&layout, 4, &mut rng).unwrap();
    let mut log = TrialLog::new(0, None);
    let alphas = [a(0.5), Alpha::One, a(2.0), a(5.0), Alpha::Infinity];
    dpi_checks(
        &mut log,
        &rho,
        &sigma,
        &KrausChannel::identity(2),
        &alphas,
        &OptimizerConfig::default(),
    )
    .unwrap();
    assert!(!log.records.is_empty());
    for r in &log.records {
        assert!(r.residual.abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn holder_equality_case() {
    let mut rng = SeededRng::new(8);
    let g = rng.ginibre(3, 3);
    let m = HermitianOperator::new(&g * g.adjoint()).unwrap();
    let c = holder_pair_check(&m, &m, 2.0).unwrap();
    assert!((c.lhs - c.rhs).abs() < 1e-12 * c.lhs);
}

#[test]
fn identical_measurements_have_zero_bound() {
    let m = Povm::computational(2);
    let spec = SuiteSpec::new(Suite::Uncertainty1)
        .alphas(&[a(0.5), Alpha::One])
        .trials(10);
    let report = run_with_measurements(&spec, &m, &m).unwrap();
    assert!(report.trials.iter().all(|r| r.rhs == 0.0));
    assert!(report.passed());
}

#[test]
fn qubit_bound_is_half_a_bit() {
    let report = run(&SuiteSpec::new(Suite::MaassenUffink)
        .alphas(&[Alpha::One])
        .trials(5))
    .unwrap();
    for r in &report.trials {
        assert!((r.rhs - 0.5).abs() < 1e-12);
    }
    assert!(report.passed());
}

#[test]
fn trivial_side_information_records_every_pairing() {
    let report = run(&SuiteSpec::new(Suite::MaassenUffink)
        .alphas(&[a(0.5), a(3.0)])
        .trials(20))
    .unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.records("maassen-uffink").count(), 40);
    assert_eq!(report.records("sum-pairing").count(), 20);
    assert_eq!(report.records("product-pairing").count(), 20);
}

#[test]
fn chains_collapse_at_one() {
    let report = run(&SuiteSpec::new(Suite::Corollary)
        .alphas(&[Alpha::One])
        .trials(10))
    .unwrap();
    assert_eq!(report.summary.checks, 80);
    assert!(report.trials.iter().all(|r| (r.lhs - r.rhs).abs() < 1e-8));
}

#[test]
fn best_effort_results_count_as_not_converged() {
    let spec = SuiteSpec::new(Suite::ClassicalOracle)
        .alphas(&[a(0.25)])
        .trials(5);
    let report = run(&spec).unwrap();
    assert_eq!(report.summary.not_converged, 5);
    assert_eq!(report.summary.checks, 20);
    assert!(report.passed(), "{report}");
}

#[test]
fn monotone_suite_sorts_orders() {
    let spec = SuiteSpec::new(Suite::MonotoneAlpha)
        .alphas(&[a(2.0), a(0.5), Alpha::One])
        .trials(5);
    let report = run(&spec).unwrap();
    assert!(report.passed(), "{report}");
    let first = &report.records("d-old").next().unwrap();
    assert_eq!((first.alpha, first.beta), (a(0.5), Some(Alpha::One)));
}

#[test]
fn converse_bound_is_violated_by_a_commuting_pair() {
    let rho = HermitianOperator::from_real_diagonal(&[0.0, 1.0]);
    let sigma = HermitianOperator::from_real_diagonal(&[0.9, 0.1]);
    let alpha = a(2.0);
    let old = d_old(&rho, &sigma, alpha).unwrap();
    let sandwiched = d_sandwiched(&rho, &sigma, alpha).unwrap();
    assert!((old - sandwiched).abs() < 1e-12);
    let bound = 2.0 * old + 0.0 + 0.9f64.log2();
    assert!(bound > sandwiched + 3.0);
}
