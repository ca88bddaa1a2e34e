//! Verifier properties: report fields must agree with a naive margin scan,
//! the persistence time must transform covariantly under rescaling, and
//! hypothesis misses must surface as errors rather than quiet passes.

mod common;

use proptest::prelude::*;
use riccilab_core::numerics::linspace;
use riccilab_core::{
    check_curvature_time, check_hamilton_ivey, check_ricci_lower, check_sec_lower,
    empirical_persistence_time, family_trajectory, reaction_trajectory_on_grid, CheckError,
    EstimateReport, ModelFamily, OperatorSpectrum, PinchingParams, PinchingVariant,
    RescaleTransform,
};

/// The checker applies the bound to the solution restarted on half-unit
/// windows once t passes 1/2; mirror of the shipped schedule.
fn shift_of(t: f64) -> f64 {
    if t <= 0.5 {
        0.0
    } else {
        ((2.0 * t).floor() - 1.0) * 0.5
    }
}

fn margin_of(lhs: f64, rhs: f64) -> f64 {
    if lhs == rhs {
        0.0
    } else {
        lhs - rhs
    }
}

/// Folds (lhs, rhs) pairs in row order the same way the report does and
/// compares every derived field.
fn assert_report_matches_scan(report: &EstimateReport, expected: &[(f64, f64, f64)]) {
    assert_eq!(report.rows.len(), expected.len(), "row count");
    let mut min_margin = f64::INFINITY;
    let mut first_violation = None;
    for (row, &(t, lhs, rhs)) in report.rows.iter().zip(expected) {
        assert_eq!(row.t, t, "row time");
        assert_eq!(row.lhs, lhs, "lhs at t = {t}");
        assert_eq!(row.rhs, rhs, "rhs at t = {t}");
        let margin = margin_of(lhs, rhs);
        assert!(
            row.margin == margin || (row.margin.is_nan() && margin.is_nan()),
            "margin at t = {t}"
        );
        min_margin = min_margin.min(margin);
        if first_violation.is_none() && margin < -report.tolerance {
            first_violation = Some(t);
        }
    }
    assert_eq!(report.min_margin, min_margin);
    assert_eq!(report.first_violation, first_violation);
    assert_eq!(report.pass, first_violation.is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn curvature_time_report_equals_a_direct_scan(
        a in -1.0..0.05f64, b in -1.0..0.05f64, c in -1.0..0.05f64,
        bound in prop::sample::select(vec![0.05f64, 5.0]),
    ) {
        let s0 = OperatorSpectrum::new(a, b, c);
        let tr = reaction_trajectory_on_grid(&s0, &linspace(0.0, 1.2, 14), 1e-8)
            .expect("non-positive spectra live past t = 1.2")
            .shifted(0.3);
        let report = check_curvature_time(&tr, bound).unwrap();
        let mut expected = Vec::new();
        for snap in &tr.snapshots {
            let r = snap.spectrum.scalar_curvature();
            expected.push((snap.t, bound, r * snap.t));
            expected.push((snap.t, bound, r * (snap.t - shift_of(snap.t))));
        }
        assert_report_matches_scan(&report, &expected);
    }

    #[test]
    fn hamilton_ivey_report_equals_a_direct_scan(
        a in -1.0..0.5f64, b in -1.0..0.5f64, c in -1.0..0.5f64,
    ) {
        let s0 = OperatorSpectrum::new(a, b, c);
        let tr = reaction_trajectory_on_grid(&s0, &linspace(0.0, 1.0, 10), 1e-8)
            .expect("grid run");
        let report = check_hamilton_ivey(&tr).unwrap();
        let mut expected = Vec::new();
        for snap in &tr.snapshots {
            let r = snap.spectrum.scalar_curvature();
            let x = -snap.spectrum.alpha();
            if x <= 0.0 {
                expected.push((snap.t, r, f64::NEG_INFINITY));
            } else {
                expected.push((snap.t, r, x * (x.ln() + (1.0 + snap.t).ln() - 3.0)));
            }
        }
        assert_report_matches_scan(&report, &expected);
    }
}

#[test]
fn persistence_time_rescales_linearly() {
    let fam = ModelFamily::round_sphere(1.0, 1).unwrap();
    let tr = family_trajectory(&fam, &linspace(0.0, 0.2, 40)).unwrap();
    let v0 = 2.0 * std::f64::consts::PI * std::f64::consts::PI;
    let s = empirical_persistence_time(&tr, v0)
        .unwrap()
        .expect("the shrinking sphere crosses the floor");
    for c in [0.3, 2.0, 4.0] {
        let hat = tr.rescale(&RescaleTransform::new(c, 0.0).unwrap()).unwrap();
        let s_hat = empirical_persistence_time(&hat, v0 * c.powf(1.5))
            .unwrap()
            .expect("rescaled flow crosses the floor too");
        assert!(
            (s_hat - c * s).abs() <= 5e-9 * (1.0 + c),
            "c = {c}: {s_hat} vs {}",
            c * s
        );
    }
}

#[test]
fn persistence_time_rejects_floors_above_the_initial_volume() {
    let fam = ModelFamily::round_sphere(1.0, 1).unwrap();
    let tr = family_trajectory(&fam, &linspace(0.0, 0.1, 5)).unwrap();
    let err = empirical_persistence_time(&tr, 1e3).unwrap_err();
    assert!(matches!(err, CheckError::HypothesisViolated(_)));
}

#[test]
fn pinching_checks_reject_initial_hypothesis_misses() {
    let grid = linspace(0.0, 0.1, 4);
    let sec = PinchingParams::new(PinchingVariant::SecScaled, 5e-3).unwrap();
    let tr = reaction_trajectory_on_grid(&OperatorSpectrum::new(-0.5, 1.0, 1.0), &grid, 1e-8)
        .unwrap();
    assert!(matches!(
        check_sec_lower(&tr, &sec),
        Err(CheckError::HypothesisViolated(_))
    ));

    let ricci = PinchingParams::new(PinchingVariant::RicciAbsolute, 5e-3).unwrap();
    let tr = reaction_trajectory_on_grid(&OperatorSpectrum::new(-0.6, -0.59, 3.0), &grid, 1e-8)
        .unwrap();
    assert!(matches!(
        check_ricci_lower(&tr, &ricci),
        Err(CheckError::HypothesisViolated(_))
    ));
}

#[test]
fn variant_and_check_pairing_is_enforced() {
    let grid = linspace(0.0, 0.1, 4);
    let tr =
        reaction_trajectory_on_grid(&OperatorSpectrum::new(0.5, 1.0, 1.0), &grid, 1e-8).unwrap();
    let sec = PinchingParams::new(PinchingVariant::SecScaled, 5e-3).unwrap();
    let ricci = PinchingParams::new(PinchingVariant::RicciScaled, 5e-3).unwrap();
    assert!(check_ricci_lower(&tr, &sec).is_err());
    assert!(check_sec_lower(&tr, &ricci).is_err());
    assert!(check_ricci_lower(&tr, &ricci).unwrap().pass);
    assert!(check_sec_lower(&tr, &sec).unwrap().pass);
}
