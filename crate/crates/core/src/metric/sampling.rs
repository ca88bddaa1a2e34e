//! Seeded point samples of closed-form model geometries and the
//! Gromov-Hausdorff convergence experiment built on them.

use crate::flow::ModelFamily;
use crate::metric::approx::gh_upper_bound;
use crate::metric::space::FiniteMetricSpace;
use crate::metric::MetricError;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn standard_normal(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // Box-Muller from uniforms in (0, 1].
    let u1 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    let r = (-2.0 * u1.ln()).sqrt();
    let theta = std::f64::consts::TAU * u2;
    (r * theta.cos(), r * theta.sin())
}

/// Draws n points from a model geometry with exact pairwise geodesic
/// distances, deterministically per seed. Supported families are the
/// round sphere without quotient (uniform on the round 3-sphere of
/// sectional curvature k0) and the flat torus (uniform coordinates with
/// per-axis wraparound).
pub fn sample_model_space(
    family: &ModelFamily,
    n: usize,
    seed: u64,
) -> Result<FiniteMetricSpace, MetricError> {
    if n == 0 {
        return Err(MetricError::BadParameter("sample size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        ModelFamily::RoundSphereQuotient { k0, quotient_order: 1 } => {
            let rho = 1.0 / k0.sqrt();
            let pts: Vec<[f64; 4]> = (0..n)
                .map(|_| {
                    let (a, b) = standard_normal(&mut rng);
                    let (c, d) = standard_normal(&mut rng);
                    let norm = (a * a + b * b + c * c + d * d).sqrt();
                    [a / norm, b / norm, c / norm, d / norm]
                })
                .collect();
            let matrix: Vec<Vec<f64>> = pts
                .iter()
                .map(|p| {
                    pts.iter()
                        .map(|q| {
                            // Chord form of the great-circle angle: exact on
                            // the diagonal and stable near antipodes, unlike
                            // acos of the dot product.
                            let diff: f64 = (0..4).map(|i| (p[i] - q[i]).powi(2)).sum();
                            let sum: f64 = (0..4).map(|i| (p[i] + q[i]).powi(2)).sum();
                            rho * 2.0 * diff.sqrt().atan2(sum.sqrt())
                        })
                        .collect()
                })
                .collect();
            FiniteMetricSpace::new(&matrix)
        }
        ModelFamily::FlatTorus { sides } => {
            let pts: Vec<[f64; 3]> = (0..n)
                .map(|_| std::array::from_fn(|axis| rng.random_range(0.0..sides[axis])))
                .collect();
            let matrix: Vec<Vec<f64>> = pts
                .iter()
                .map(|p| {
                    pts.iter()
                        .map(|q| {
                            (0..3)
                                .map(|axis| {
                                    let gap = (p[axis] - q[axis]).abs();
                                    gap.min(sides[axis] - gap).powi(2)
                                })
                                .sum::<f64>()
                                .sqrt()
                        })
                        .collect()
                })
                .collect();
            FiniteMetricSpace::new(&matrix)
        }
        _ => Err(MetricError::UnsupportedFamily(family.name().into())),
    }
}

/// One time slice of the convergence experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhRow {
    pub t: f64,
    /// Closed-form distance scale of the family at time t relative to
    /// time zero.
    pub scale: f64,
    /// Searched Gromov-Hausdorff upper bound between the time-t sample
    /// and the time-zero sample.
    pub bound: f64,
}

fn distance_scale(family: &ModelFamily, t: f64) -> Result<f64, MetricError> {
    match *family {
        ModelFamily::RoundSphereQuotient { k0, .. } => {
            let f = 1.0 - 4.0 * k0 * t;
            if f <= 0.0 {
                return Err(MetricError::BadParameter(format!(
                    "time {t} is at or past the blow-up of the sphere family"
                )));
            }
            Ok(f.sqrt())
        }
        ModelFamily::FlatTorus { .. } => Ok(1.0),
        _ => Err(MetricError::UnsupportedFamily(family.name().into())),
    }
}

/// Samples the family once at time zero, rescales the sample by the
/// family's closed-form distance factor for each requested time, and
/// reports the searched GH upper bound from each slice back to the base
/// sample. For a shrinking family the bound decays linearly in
/// 1 - scale(t); for the stationary torus it stays at zero.
pub fn gh_convergence_experiment(
    family: &ModelFamily,
    times: &[f64],
    n: usize,
    seed: u64,
) -> Result<Vec<GhRow>, MetricError> {
    let base = sample_model_space(family, n, seed)?;
    let budget = 2_000;
    times
        .iter()
        .map(|&t| {
            let scale = distance_scale(family, t)?;
            let matrix: Vec<Vec<f64>> = (0..n)
                .map(|i| (0..n).map(|j| scale * base.dist(i, j)).collect())
                .collect();
            let slice = FiniteMetricSpace::new(&matrix)?;
            let (bound, _) = gh_upper_bound(&slice, &base, budget, seed);
            Ok(GhRow { t, scale, bound })
        })
        .collect()
}
