//! Metric-kit properties: Gromov-Hausdorff bound symmetries, Hausdorff
//! distance basics, planted metric violations, flat-line comparison, and
//! sampler determinism.

mod common;

use rand::Rng;
use riccilab_core::{
    alexandrov_check, gh_upper_bound, hausdorff_distance, sample_model_space, validate_metric,
    FiniteMetricSpace, ModelFamily,
};

#[test]
fn gh_bound_vanishes_on_identical_spaces_and_is_symmetric() {
    let mut rng = common::rng(0xD15_7A9CE);
    for n in 2..=6usize {
        let x = common::random_euclidean_space(&mut rng, n);
        let y = common::random_euclidean_space(&mut rng, n + 1);
        let (self_bound, cert) = gh_upper_bound(&x, &x, 0, 1);
        assert_eq!(self_bound, 0.0, "identity map is found exhaustively");
        assert_eq!(cert.nu, 0.0);
        let (ab, _) = gh_upper_bound(&x, &y, 0, 1);
        let (ba, _) = gh_upper_bound(&y, &x, 0, 1);
        assert_eq!(ab, ba, "both directions are searched from either call");
        assert!(ab >= 0.0);
    }
}

#[test]
fn hausdorff_distance_basics() {
    let mut rng = common::rng(0xFACE);
    let z = common::random_euclidean_space(&mut rng, 9);
    let a: Vec<usize> = vec![0, 1, 2, 3];
    let b: Vec<usize> = vec![4, 5, 6, 7, 8];
    let ab = hausdorff_distance(&z, &a, &b).unwrap();
    let ba = hausdorff_distance(&z, &b, &a).unwrap();
    assert_eq!(ab, ba);
    assert_eq!(hausdorff_distance(&z, &a, &a).unwrap(), 0.0);
    // growing one side by the other's points can only shrink the distance
    let mut union = a.clone();
    union.extend(&b);
    assert!(hausdorff_distance(&z, &a, &union).unwrap() <= ab + 1e-15);
}

#[test]
fn validate_metric_flags_planted_defects() {
    let mut rng = common::rng(0xBAD_D157);
    for _ in 0..20 {
        let space = common::random_euclidean_space(&mut rng, 7);
        let clean: Vec<Vec<f64>> = (0..7)
            .map(|i| (0..7).map(|j| space.dist(i, j)).collect())
            .collect();
        assert!(validate_metric(&clean).unwrap().is_empty());

        let mut asym = clean.clone();
        asym[2][5] += 0.25;
        assert!(!validate_metric(&asym).unwrap().is_empty());

        let mut spike = clean.clone();
        // push one distance past every two-leg detour
        let detour = clean[1][4] + 2.0 * space.diameter();
        spike[1][4] = detour;
        spike[4][1] = detour;
        assert!(!validate_metric(&spike).unwrap().is_empty());
    }
}

#[test]
fn colinear_samples_pass_flat_comparison() {
    let mut rng = common::rng(0x11E5);
    for _ in 0..10 {
        let mut xs: Vec<f64> = (0..12).map(|_| rng.random_range(0.0..10.0)).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-3);
        let matrix: Vec<Vec<f64>> = xs
            .iter()
            .map(|a| xs.iter().map(|b| (a - b).abs()).collect())
            .collect();
        let line = FiniteMetricSpace::new(&matrix).unwrap();
        let report = alexandrov_check(&line, 0.0, 1e-9).unwrap();
        assert!(
            report.pass,
            "flat line violated k = 0: min margin {}",
            report.min_margin
        );
        assert!(report.checked > 0, "colinear membership found no quadruples");
    }
}

#[test]
fn model_sampler_is_seed_deterministic() {
    let fam = ModelFamily::round_sphere(1.0, 1).unwrap();
    let a = sample_model_space(&fam, 15, 42).unwrap();
    let b = sample_model_space(&fam, 15, 42).unwrap();
    assert_eq!(a.to_matrix_string(), b.to_matrix_string());
    let c = sample_model_space(&fam, 15, 43).unwrap();
    assert_ne!(a.to_matrix_string(), c.to_matrix_string());
}
