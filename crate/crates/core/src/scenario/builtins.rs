//! Built-in scenario catalog.
//!
//! Each entry is a complete config in the flat key-value format, usable
//! directly by the runner or as a template for custom scenarios. The
//! catalog is balanced between all-pass regression batteries and scenarios
//! whose checks are expected to fail, so both verdict polarities stay
//! exercised.

/// One catalog entry: a stable id, a one-line summary, and the full
/// config text.
#[derive(Debug, Clone, Copy)]
pub struct BuiltinScenario {
    pub id: &'static str,
    pub summary: &'static str,
    pub config: &'static str,
}

/// Stationary flat torus: every time-dependent bound degenerates to its
/// equality case, so this doubles as a smoke test for the artifact layout.
const FLAT_TORUS_SMOKE: &str = "\
scenario.id = flat-torus-smoke
scenario.seed = 11
source.kind = family
source.family = flat-torus
source.sides = 1 1 1
grid.end = 1
grid.steps = 10
# Curvature is identically zero, so R * t stays at zero.
check.1.kind = curvature-time
check.1.c = 1
# Distances and diameter never move; zero drift allowance suffices. The
# torus diameter is sqrt(3)/2, so 0.87 caps it.
check.2.kind = diameter-upper
check.2.c0 = 0
check.2.d0 = 0.87
check.3.kind = distance-upper
check.3.c0 = 0
check.4.kind = volume-persist
check.4.v0 = 1
# Ball ratios sit between the wraparound floor and the Euclidean 4 pi / 3.
check.5.kind = volume-ratio
check.5.l = 4.5
check.5.eps = 1
";

/// Shrinking round sphere over its first fifth of life: the full estimate
/// battery, with the one bound that genuinely fails marked as expected.
const ROUND_SPHERE_BATTERY: &str = "\
scenario.id = round-sphere-battery
source.kind = family
source.family = round-sphere
source.k0 = 1
source.quotient = 1
grid.end = 0.2
grid.steps = 40
# R * t = 6t / (1 - 4t) reaches 6 exactly at the right endpoint.
check.1.kind = curvature-time
check.1.c = 6
check.2.kind = ricci-lower
check.2.eps0 = 0.005
check.3.kind = sec-lower
check.3.eps0 = 0.005
# Positive curvature keeps every row vacuous.
check.4.kind = hamilton-ivey
check.4.expect = pass
# The critical drift constant for this slice is just under 3.38.
check.5.kind = distance-lower
check.5.C = 3.5
check.6.kind = distance-upper
check.6.c0 = 0
check.7.kind = diameter-upper
check.7.c0 = 0
check.7.d0 = 3.141592653589793
# Volume decays from the start, so persistence at the initial volume
# cannot hold; the violation is the point of this check.
check.8.kind = volume-persist
check.8.v0 = 19.739208802178716
check.8.expect = violation
check.9.kind = volume-ratio
check.9.l = 4.5
check.9.eps = 0.5
# Initial volume 2 pi^2 and diameter pi; sup R*t over the surviving
# window stays below 1.
check.10.kind = theorem61-window
check.10.v0 = 19.739208802178716
check.10.d0 = 3.141592653589793
check.10.c = 1
";

/// Mixed-sign spectrum whose smallest eigenvalue starts slightly negative:
/// all four pinching variants must hold along the reaction flow.
const PINCH_PRESERVE: &str = "\
scenario.id = pinch-preserve
source.kind = reaction
source.alpha = -0.001
source.beta = 0.5
source.gamma = 0.6
source.tol = 1e-8
# Step 0.004 lands grid points inside the short absolute window.
grid.end = 0.124
grid.steps = 31
check.1.kind = ricci-lower
check.1.eps0 = 0.008
check.2.kind = sec-lower
check.2.eps0 = 0.008
check.3.kind = ricci-lower
check.3.variant = ricci-absolute
check.3.eps0 = 0.008
check.4.kind = sec-lower
check.4.variant = sec-absolute
check.4.eps0 = 0.008
check.5.kind = hamilton-ivey
check.6.kind = curvature-time
check.6.c = 1
";

/// Neck spectrum watched at negative times, where the scale-invariant
/// monitor provably decreases and the scan flags a persistent neck.
const NECK_NEGATIVE_TIME: &str = "\
scenario.id = neck-negative-time
source.kind = reaction
source.alpha = 0
source.beta = 1
source.gamma = 1
source.tol = 1e-8
# Display the run on [-2, -1.5] so the monitor's time weights apply.
source.shift = -2
grid.end = 0.5
grid.steps = 25
check.1.kind = g-monitor
check.1.delta = 1
# The neck defect starts at 1 and drifts up slowly; 1.5 keeps headroom.
check.2.kind = necklike-scan
check.2.C = 1
check.2.delta = 1.5
";

/// Round control for the neck scan: the same monitors on an isotropic
/// spectrum, where the defect sits at sqrt(2) and must trip the scan.
const SPHERE_NECK_CONTROL: &str = "\
scenario.id = sphere-neck-control
source.kind = reaction
source.alpha = 2
source.beta = 2
source.gamma = 2
source.tol = 1e-8
source.shift = -1
grid.end = 0.2
grid.steps = 20
# The traceless part vanishes identically, so the monitor reads zero.
check.1.kind = g-monitor
check.1.delta = 1
# A round spectrum is nowhere near the neck model; expect the defect
# threshold to fail at every snapshot.
check.2.kind = necklike-scan
check.2.C = 0.1
check.2.delta = 0.5
check.2.expect = violation
";

/// Deliberately under-sized constants on the round sphere: every check
/// here must report a violation, pinning the failure detection paths.
const EXPECTED_VIOLATIONS: &str = "\
scenario.id = expected-violations
source.kind = family
source.family = round-sphere
source.k0 = 1
grid.end = 0.2
grid.steps = 40
# R * t crosses 5 at t = 5/26, within the grid.
check.1.kind = curvature-time
check.1.c = 5
check.1.expect = violation
# Below the critical drift constant.
check.2.kind = distance-lower
check.2.C = 3
check.2.expect = violation
check.3.kind = volume-persist
check.3.v0 = 19.739208802178716
check.3.expect = violation
# The ratio floor 3 is above the large-radius ratio 2 / pi.
check.4.kind = volume-ratio
check.4.l = 4.5
check.4.eps = 3
check.4.expect = violation
";

/// Sampled-geometry toolkit probes on the shrinking sphere: convergence of
/// the searched GH bound, the triangle-comparison scan, and randomized
/// gluing/extraction round trips.
const METRIC_TOOLKIT_PROBES: &str = "\
scenario.id = metric-toolkit-probes
scenario.seed = 424242
source.kind = family
source.family = round-sphere
source.k0 = 1
source.quotient = 1
grid.end = 0.08
grid.steps = 4
# The searched bound must stay under the identity-map envelope.
check.1.kind = gh-convergence
check.1.n = 12
# Samples of the unit sphere satisfy the curvature-1 comparison.
check.2.kind = alexandrov
check.2.n = 14
check.2.k = 1
check.3.kind = approx-probe
check.3.pairs = 24
";

const CATALOG: [BuiltinScenario; 7] = [
    BuiltinScenario {
        id: "flat-torus-smoke",
        summary: "stationary torus, equality cases of the drift and volume bounds",
        config: FLAT_TORUS_SMOKE,
    },
    BuiltinScenario {
        id: "round-sphere-battery",
        summary: "full estimate battery on the shrinking round sphere",
        config: ROUND_SPHERE_BATTERY,
    },
    BuiltinScenario {
        id: "pinch-preserve",
        summary: "all four pinching variants on a mixed-sign reaction flow",
        config: PINCH_PRESERVE,
    },
    BuiltinScenario {
        id: "neck-negative-time",
        summary: "neck spectrum at negative times: monitor decay and neck scan",
        config: NECK_NEGATIVE_TIME,
    },
    BuiltinScenario {
        id: "sphere-neck-control",
        summary: "round control where the neck scan must fire",
        config: SPHERE_NECK_CONTROL,
    },
    BuiltinScenario {
        id: "expected-violations",
        summary: "under-sized constants that must all report violations",
        config: EXPECTED_VIOLATIONS,
    },
    BuiltinScenario {
        id: "metric-toolkit-probes",
        summary: "sampled GH convergence, comparison scan, and gluing probes",
        config: METRIC_TOOLKIT_PROBES,
    },
];

/// All built-in scenarios, in catalog order.
pub fn list_builtin_scenarios() -> Vec<BuiltinScenario> {
    CATALOG.to_vec()
}

/// Looks up a built-in scenario by id.
pub fn builtin_scenario(id: &str) -> Option<BuiltinScenario> {
    CATALOG.iter().copied().find(|s| s.id == id)
}
