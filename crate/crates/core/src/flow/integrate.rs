//! Adaptive Runge-Kutta integration of the curvature reaction ODE
//! a' = a^2 + bc (and cyclic), with embedded 5(4) error control.

use crate::curvature::OperatorSpectrum;
use crate::flow::trajectory::{Trajectory, TrajectorySource};
use crate::flow::FlowError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    /// Relative tolerance driving step-size control.
    pub rtol: f64,
    /// Absolute floor in the error weights.
    pub atol: f64,
    /// Frobenius-norm cap; crossing it halts integration and records a
    /// blow-up estimate.
    pub norm_cap: f64,
    /// Accepted-plus-rejected step budget.
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            rtol: 1e-10,
            atol: 1e-12,
            norm_cap: 1e8,
            max_steps: 1_000_000,
        }
    }
}

impl IntegratorOptions {
    pub fn with_rtol(rtol: f64) -> Self {
        IntegratorOptions { rtol, ..Default::default() }
    }

    fn validate(&self) -> Result<(), FlowError> {
        if !(self.rtol > 0.0 && self.rtol < 1.0) {
            return Err(FlowError::BadTolerance(self.rtol));
        }
        if !(self.atol > 0.0 && self.norm_cap > 0.0) {
            return Err(FlowError::BadTolerance(self.atol.min(self.norm_cap)));
        }
        Ok(())
    }
}

fn rhs(y: [f64; 3]) -> [f64; 3] {
    [
        y[0] * y[0] + y[1] * y[2],
        y[1] * y[1] + y[0] * y[2],
        y[2] * y[2] + y[0] * y[1],
    ]
}

fn norm(y: [f64; 3]) -> f64 {
    (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt()
}

// Dormand-Prince 5(4) tableau.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
];
const B: [f64; 6] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
];
// Difference between the fifth- and fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn axpy(y: [f64; 3], h: f64, coeffs: &[f64], ks: &[[f64; 3]]) -> [f64; 3] {
    let mut out = y;
    for (c, k) in coeffs.iter().zip(ks) {
        for i in 0..3 {
            out[i] += h * c * k[i];
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ReactionState {
    pub t: f64,
    pub y: [f64; 3],
    h: f64,
}

impl ReactionState {
    pub(crate) fn new(t: f64, y: [f64; 3]) -> Self {
        let scale = 1.0 + norm(rhs(y));
        ReactionState { t, y, h: 1e-3 / scale }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum HaltReason {
    /// Reached the target time.
    Reached,
    /// Norm cap exceeded; the payload is the time of the offending state,
    /// which is not pushed to the sink.
    CapCrossed(f64),
    /// Step size underflowed (stiffness, usually adjacent to blow-up).
    Underflow(f64),
    /// Step budget exhausted.
    Budget(f64),
}

/// Advance the state to `t_target`, invoking `on_step` at every accepted
/// step strictly below the norm cap. The target itself is hit exactly.
pub(crate) fn advance<F: FnMut(f64, [f64; 3])>(
    state: &mut ReactionState,
    t_target: f64,
    opts: &IntegratorOptions,
    mut on_step: F,
) -> Result<HaltReason, FlowError> {
    opts.validate()?;
    let mut steps = 0usize;
    while state.t < t_target {
        if steps >= opts.max_steps {
            return Ok(HaltReason::Budget(state.t));
        }
        steps += 1;
        let rem = t_target - state.t;
        if rem <= 1e-14 * t_target.abs().max(1.0) {
            // Closer than any resolvable step: snap without integrating.
            state.t = t_target;
            return Ok(HaltReason::Reached);
        }
        let h = state.h.min(rem);
        if h < 1e-14 * state.t.abs().max(1.0) {
            return Ok(HaltReason::Underflow(state.t));
        }

        let y = state.y;
        let k1 = rhs(y);
        let k2 = rhs(axpy(y, h, &A2, &[k1]));
        let k3 = rhs(axpy(y, h, &A3, &[k1, k2]));
        let k4 = rhs(axpy(y, h, &A4, &[k1, k2, k3]));
        let k5 = rhs(axpy(y, h, &A5, &[k1, k2, k3, k4]));
        let k6 = rhs(axpy(y, h, &A6, &[k1, k2, k3, k4, k5]));
        let ks = [k1, k2, k3, k4, k5, k6];
        let y_new = axpy(y, h, &B, &ks);
        let k7 = rhs(y_new);

        let mut err_sq = 0.0;
        for i in 0..3 {
            let mut e = 0.0;
            for (c, k) in E.iter().zip(ks.iter().chain(std::iter::once(&k7))) {
                e += c * k[i];
            }
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            let q = h * e / sc;
            err_sq += q * q;
        }
        let err = (err_sq / 3.0).sqrt();

        if err > 1.0 {
            state.h = 0.5 * h;
            continue;
        }

        let t_new = state.t + h;
        state.h = if err < 1.0 / 32.0 { 2.0 * h } else { h };
        if norm(y_new) > opts.norm_cap {
            return Ok(HaltReason::CapCrossed(t_new));
        }
        let mut sorted = y_new;
        sorted.sort_by(f64::total_cmp);
        state.t = t_new;
        state.y = sorted;
        on_step(t_new, sorted);
    }
    Ok(HaltReason::Reached)
}

/// Integrate the reaction ODE from `s0` up to `t_end` with relative
/// tolerance `tol`, recording every accepted step. Halts early with a
/// blow-up estimate when the Frobenius norm crosses the configured cap.
pub fn integrate_reaction(
    s0: &OperatorSpectrum,
    t_end: f64,
    tol: f64,
) -> Result<Trajectory, FlowError> {
    integrate_reaction_with(s0, t_end, &IntegratorOptions::with_rtol(tol))
}

pub fn integrate_reaction_with(
    s0: &OperatorSpectrum,
    t_end: f64,
    opts: &IntegratorOptions,
) -> Result<Trajectory, FlowError> {
    opts.validate()?;
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(FlowError::BadGrid);
    }
    let mut traj = Trajectory::seeded(
        TrajectorySource::Reaction { initial: *s0, tol: opts.rtol },
        *s0,
    );
    let mut state = ReactionState::new(0.0, s0.as_array());
    let halt = advance(&mut state, t_end, opts, |t, y| {
        traj.push_reaction_state(t, y);
    })?;
    match halt {
        HaltReason::Reached => Ok(traj),
        HaltReason::CapCrossed(tc) => {
            traj.blow_up_estimate = Some(tc);
            Ok(traj)
        }
        HaltReason::Underflow(t) => {
            Err(FlowError::StepUnderflow { t, partial: Box::new(traj) })
        }
        HaltReason::Budget(t) => Err(FlowError::StepBudget { t }),
    }
}

const BLOW_UP_HORIZON: f64 = 16.0;

/// Estimated blow-up time of the reaction ODE started at `s0`, or None when
/// the solution stays below the norm cap for the whole search horizon. The
/// cap-crossing time is sharpened by bisecting short re-integrations from
/// the last state below the cap.
pub fn blow_up_time(s0: &OperatorSpectrum) -> Option<f64> {
    let opts = IntegratorOptions::default();
    let mut state = ReactionState::new(0.0, s0.as_array());
    let mut last_safe = (0.0, s0.as_array());
    let halt = advance(&mut state, BLOW_UP_HORIZON, &opts, |t, y| {
        last_safe = (t, y);
    })
    .expect("default options are valid");
    let crossed = match halt {
        HaltReason::Reached => return None,
        HaltReason::CapCrossed(tc) => tc,
        HaltReason::Underflow(t) | HaltReason::Budget(t) => return Some(t),
    };

    // Bracket [last accepted sub-cap time, crossing time] and bisect on
    // whether a fresh integration from the safe state crosses the cap.
    let (mut lo, mut hi) = (last_safe.0, crossed);
    for _ in 0..64 {
        if hi - lo < 1e-12 * hi.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let mut probe = ReactionState::new(last_safe.0, last_safe.1);
        match advance(&mut probe, mid, &opts, |_, _| {}) {
            Ok(HaltReason::Reached) => lo = mid,
            _ => hi = mid,
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_spectrum_matches_closed_form() {
        let s0 = OperatorSpectrum::new(2.0, 2.0, 2.0);
        let traj = integrate_reaction(&s0, 0.225, 1e-10).unwrap();
        assert!(traj.snapshots.len() > 10);
        for snap in &traj.snapshots {
            let expect = 2.0 / (1.0 - 4.0 * snap.t);
            for v in snap.spectrum.as_array() {
                assert!(
                    (v - expect).abs() <= 1e-6 * expect,
                    "t = {}, got {v}, want {expect}",
                    snap.t
                );
            }
        }
        let last = traj.snapshots.last().unwrap();
        assert_eq!(last.t, 0.225);
    }

    #[test]
    fn neck_spectrum_preserves_zero_block() {
        let s0 = OperatorSpectrum::new(0.0, 0.0, 2.0);
        let traj = integrate_reaction(&s0, 0.4, 1e-10).unwrap();
        for snap in &traj.snapshots {
            let [a, b, g] = snap.spectrum.as_array();
            assert!(a.abs() < 1e-12 && b.abs() < 1e-12);
            let expect = 2.0 / (1.0 - 2.0 * snap.t);
            assert!((g - expect).abs() <= 1e-6 * expect);
        }
    }

    #[test]
    fn negative_round_spectrum_decays() {
        let s0 = OperatorSpectrum::new(-2.0, -2.0, -2.0);
        let traj = integrate_reaction(&s0, 1.0, 1e-10).unwrap();
        let last = traj.snapshots.last().unwrap();
        let expect = -2.0 / (1.0 + 4.0 * 1.0);
        for v in last.spectrum.as_array() {
            assert!((v - expect).abs() < 1e-8);
        }
        assert!(traj.blow_up_estimate.is_none());
    }

    #[test]
    fn cap_crossing_sets_blow_up_estimate() {
        let s0 = OperatorSpectrum::new(2.0, 2.0, 2.0);
        let traj = integrate_reaction(&s0, 0.3, 1e-10).unwrap();
        let est = traj.blow_up_estimate.expect("crosses the cap before 0.3");
        assert!((est - 0.25).abs() < 1e-4);
        for snap in &traj.snapshots {
            assert!(snap.t < est);
        }
    }

    #[test]
    fn blow_up_times_match_closed_form() {
        for c in [1.0, 2.0, 4.0, 10.0] {
            let s0 = OperatorSpectrum::new(c, c, c);
            let t = blow_up_time(&s0).expect("round spectra blow up");
            assert!(
                (t - 1.0 / (2.0 * c)).abs() < 1e-4,
                "c = {c}: got {t}, want {}",
                1.0 / (2.0 * c)
            );
        }
    }

    #[test]
    fn flat_and_negative_spectra_do_not_blow_up() {
        assert_eq!(blow_up_time(&OperatorSpectrum::new(0.0, 0.0, 0.0)), None);
        assert_eq!(blow_up_time(&OperatorSpectrum::new(-1.0, -1.0, -1.0)), None);
    }

    #[test]
    fn rejects_bad_tolerances() {
        let s0 = OperatorSpectrum::new(1.0, 1.0, 1.0);
        assert!(matches!(
            integrate_reaction(&s0, 0.1, 0.0),
            Err(FlowError::BadTolerance(_))
        ));
        assert!(matches!(
            integrate_reaction(&s0, 0.1, 2.0),
            Err(FlowError::BadTolerance(_))
        ));
        assert!(matches!(
            integrate_reaction(&s0, -1.0, 1e-8),
            Err(FlowError::BadGrid)
        ));
    }

    #[test]
    fn mixed_spectrum_stays_sorted() {
        let s0 = OperatorSpectrum::new(-1.0, 0.0, 2.0);
        let traj = integrate_reaction(&s0, 0.2, 1e-9).unwrap();
        for snap in &traj.snapshots {
            let [a, b, g] = snap.spectrum.as_array();
            assert!(a <= b && b <= g);
        }
    }
}
