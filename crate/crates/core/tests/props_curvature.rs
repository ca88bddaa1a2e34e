//! Properties of the eigenvalue algebra: the identities the reaction system
//! and pinching arguments lean on, rank-one splitting, and the necklike
//! defect range.

mod common;

use proptest::prelude::*;
use rand::Rng;
use riccilab_core::curvature::wedge;
use riccilab_core::{necklike_defect, split_two_form, OperatorSpectrum, TwoForm3};

fn dot(x: [f64; 3], y: [f64; 3]) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

fn norm(x: [f64; 3]) -> f64 {
    dot(x, x).sqrt()
}

#[test]
fn split_reconstructs_ten_thousand_random_forms() {
    let mut rng = common::rng(0x51EE_D001);
    let mut done = 0usize;
    while done < 10_000 {
        let coeffs = [
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
        ];
        let w = TwoForm3::new(coeffs[0], coeffs[1], coeffs[2]);
        if w.is_zero() {
            continue;
        }
        let (x, v) = split_two_form(&w).expect("nonzero forms split");
        let back = wedge(x, v);
        let scale = norm(coeffs).max(1.0);
        for k in 0..3 {
            assert!(
                (back[k] - coeffs[k]).abs() <= 1e-12 * scale,
                "component {k} of {coeffs:?} came back as {back:?}"
            );
        }
        assert!(
            dot(x, v).abs() <= 1e-12 * norm(x) * norm(v),
            "factors of {coeffs:?} are not orthogonal: {x:?} . {v:?}"
        );
        done += 1;
    }
}

#[test]
fn zero_form_refuses_to_split() {
    assert!(split_two_form(&TwoForm3::new(0.0, 0.0, 0.0)).is_err());
}

proptest! {
    #[test]
    fn ricci_sum_matches_scalar_curvature(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
    ) {
        let s = OperatorSpectrum::new(a, b, c);
        // the half-sum assembly rounds differently from the direct sum,
        // so the identity holds up to a few ulps of the spectrum scale
        let diff = (s.ricci().scalar() - s.scalar_curvature()).abs();
        prop_assert!(diff <= 1e-13 * (1.0 + s.frobenius_norm()));
    }

    #[test]
    fn ricci_norm_agrees_with_eigenvalue_squares(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
    ) {
        let s = OperatorSpectrum::new(a, b, c);
        let closed = s.ricci_norm_sq();
        let summed = s.ricci().sum_sq();
        prop_assert!((closed - summed).abs() <= 1e-12 * (1.0 + closed.abs()));
    }

    #[test]
    fn reaction_trace_is_twice_ricci_norm(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
    ) {
        let s = OperatorSpectrum::new(a, b, c);
        let trace: f64 = s.reaction_rhs().iter().sum();
        let expected = 2.0 * s.ricci_norm_sq();
        prop_assert!((trace - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn construction_sorts_and_permutations_collapse(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
    ) {
        let s = OperatorSpectrum::new(a, b, c);
        let arr = s.as_array();
        prop_assert!(arr[0] <= arr[1] && arr[1] <= arr[2]);
        for (p, q, r) in [(b, a, c), (b, c, a), (c, a, b), (c, b, a), (a, c, b)] {
            let perm = OperatorSpectrum::new(p, q, r);
            prop_assert_eq!(perm.as_array(), arr);
            prop_assert_eq!(perm.reaction_rhs(), s.reaction_rhs());
        }
    }

    #[test]
    fn ricci_eigenvalues_invert_to_the_operator(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
    ) {
        let s = OperatorSpectrum::new(a, b, c);
        let back = s.ricci().operator_eigenvalues();
        let scale = 1.0 + s.frobenius_norm();
        for (x, y) in back.iter().zip(s.as_array()) {
            prop_assert!((x - y).abs() <= 1e-12 * scale);
        }
    }
}

#[test]
fn equal_spectra_evolve_equally() {
    for k in [-2.0, -0.5, 0.1, 2.0] {
        let rhs = OperatorSpectrum::new(k, k, k).reaction_rhs();
        assert_eq!(rhs[0], 2.0 * k * k);
        assert_eq!(rhs[0], rhs[1]);
        assert_eq!(rhs[1], rhs[2]);
    }
}

/// Exhaustive sign/zero grid: the defect stays in [0, 1 + sqrt(3)] and
/// vanishes exactly on the rank-one patterns (one nonzero eigenvalue of
/// either sign).
#[test]
fn necklike_defect_range_and_zero_set() {
    let values = [-1.0, 0.0, 2.0];
    let cap = 1.0 + 3f64.sqrt();
    for a in values {
        for b in values {
            for c in values {
                let s = OperatorSpectrum::new(a, b, c);
                if s.is_zero() {
                    assert!(necklike_defect(&s).is_err());
                    continue;
                }
                let (defect, _) = necklike_defect(&s).expect("nonzero spectrum");
                assert!(
                    (0.0..=cap).contains(&defect),
                    "defect {defect} for ({a}, {b}, {c}) outside [0, 1+sqrt(3)]"
                );
                let nonzero = [a, b, c].iter().filter(|v| **v != 0.0).count();
                if nonzero == 1 {
                    assert!(defect.abs() <= 1e-12, "rank-one ({a}, {b}, {c}) gave {defect}");
                } else {
                    assert!(defect > 1e-2, "non-neck ({a}, {b}, {c}) gave defect {defect}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn necklike_defect_stays_bounded(
        a in -10.0..10.0f64, b in -10.0..10.0f64, c in -10.0..10.0f64,
    ) {
        let s = OperatorSpectrum::new(a, b, c);
        prop_assume!(!s.is_zero());
        let (defect, idx) = necklike_defect(&s).unwrap();
        prop_assert!(defect >= 0.0 && defect <= 1.0 + 3f64.sqrt());
        prop_assert!(idx < 3);
    }
}
