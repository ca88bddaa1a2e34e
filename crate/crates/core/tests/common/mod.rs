//! Shared helpers for the integration suites: seeded RNG, spectra drawn on
//! or near the pinching hypothesis floors, and zero-set samples for the
//! boundary derivative.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use riccilab_core::numerics::linspace;
use riccilab_core::{
    reaction_trajectory_on_grid, FiniteMetricSpace, OperatorSpectrum, PinchingParams,
    PinchingVariant, RicciSpectrum, Trajectory,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Pinching fraction strictly inside the admissible (1e-4, 1e-2) interval,
/// kept away from both ends so constructor round-trips never reject.
pub fn random_eps0(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(1.2e-4..9.9e-3)
}

pub fn is_absolute(variant: PinchingVariant) -> bool {
    matches!(
        variant,
        PinchingVariant::RicciAbsolute | PinchingVariant::SecAbsolute
    )
}

pub fn is_ricci_watching(variant: PinchingVariant) -> bool {
    matches!(
        variant,
        PinchingVariant::RicciScaled | PinchingVariant::RicciAbsolute
    )
}

/// The ricci/sec pair sharing one fraction, scaled or absolute flavor.
pub fn lemma_params(absolute: bool, eps0: f64) -> (PinchingParams, PinchingParams) {
    let (rv, sv) = if absolute {
        (PinchingVariant::RicciAbsolute, PinchingVariant::SecAbsolute)
    } else {
        (PinchingVariant::RicciScaled, PinchingVariant::SecScaled)
    };
    (
        PinchingParams::new(rv, eps0).expect("eps0 inside the admissible interval"),
        PinchingParams::new(sv, eps0).expect("eps0 inside the admissible interval"),
    )
}

/// Initial spectrum satisfying the sectional hypothesis for `sec`, biased
/// toward the floor. The smallest eigenvalue at the sectional floor also
/// clears the Ricci floor (the second eigenvalue is no smaller), so one
/// draw feeds both checks of a lemma. Resamples on the rare floor-equality
/// rounding miss.
pub fn spectrum_on_hypothesis(sec: &PinchingParams, rng: &mut ChaCha8Rng) -> OperatorSpectrum {
    let eps0 = sec.eps0();
    loop {
        let b = rng.random_range(0.05..3.0);
        let c = rng.random_range(0.05..3.0);
        let floor = if is_absolute(sec.variant()) {
            -eps0 / 4.0
        } else {
            // a >= -(eps0/4)(a + b + c) solved for a
            -eps0 * (b + c) / (4.0 + eps0)
        };
        let hi = b.min(c).min(1.0);
        let u: f64 = rng.random_range(1e-6..1.0);
        // square the fraction so half the draws land in the lowest quarter
        let a = floor + u * u * (hi - floor);
        let s = OperatorSpectrum::new(a, b, c);
        if sec.hypothesis_holds(&s) {
            return s;
        }
    }
}

/// Grid covering the variant's preservation window. The scaled window is
/// right-open, so its grid stops one step short of the endpoint.
pub fn window_grid(p: &PinchingParams) -> Vec<f64> {
    let end = p.window_end();
    if is_absolute(p.variant()) {
        linspace(0.0, end, 10)
    } else {
        linspace(0.0, end - 1e-3, 31)
    }
}

/// Reaction trajectory for one preservation trial. Blow-up inside the
/// window just truncates the grid, which is fine: preservation is claimed
/// wherever the flow exists.
pub fn preservation_trajectory(s0: OperatorSpectrum, grid: &[f64]) -> Trajectory {
    reaction_trajectory_on_grid(&s0, grid, 1e-8).expect("reaction grid run")
}

/// One zero-set sample for the boundary derivative: parameters, a spectrum
/// whose watched eigenvalue sits on the pinching boundary at `t`, and the
/// time. Rejects draws where the boundary value is not actually the
/// smallest eigenvalue or where the scalar curvature drops below -3 eps0.
pub fn boundary_sample(
    variant: PinchingVariant,
    rng: &mut ChaCha8Rng,
) -> Option<(PinchingParams, RicciSpectrum, f64)> {
    let eps0 = random_eps0(rng);
    let p = PinchingParams::new(variant, eps0).expect("eps0 inside the admissible interval");
    let t = rng.random_range(0.0..p.window_end());
    let lo = rng.random_range(-0.5..3.0);
    let hi = rng.random_range(-0.5..3.0);
    let v = p.boundary_eigenvalue(lo + hi, t);
    if v > lo.min(hi) {
        return None;
    }
    let spec = if is_ricci_watching(p.variant()) {
        RicciSpectrum::new(v, lo, hi)
    } else {
        // operator triple (v, lo, hi) expressed through Ricci half-sums
        RicciSpectrum::new((v + lo) / 2.0, (v + hi) / 2.0, (lo + hi) / 2.0)
    };
    if spec.scalar() < -3.0 * eps0 {
        return None;
    }
    Some((p, spec, t))
}

/// Euclidean distance matrix of `n` uniform points in a side-3 cube.
pub fn random_euclidean_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let pts: Vec<[f64; 3]> = (0..n)
        .map(|_| {
            [
                rng.random_range(0.0..3.0),
                rng.random_range(0.0..3.0),
                rng.random_range(0.0..3.0),
            ]
        })
        .collect();
    let matrix: Vec<Vec<f64>> = pts
        .iter()
        .map(|a| {
            pts.iter()
                .map(|b| {
                    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::new(&matrix).expect("euclidean matrices are metrics")
}
