//! Pointwise inequality checks over a trajectory.

use crate::curvature::PinchingParams;
use crate::estimates::{
    row, CheckError, EstimateKind, EstimateOptions, EstimateReport, EstimateSpec, ReportRow,
};
use crate::flow::{FlowSnapshot, Trajectory};
use crate::numerics::{bisect_crossing, cumulative_trapezoid};

/// Half-unit shift schedule: the bound is applied to the solution restarted
/// at (N-1)/2, so the local time stays in [1/2, 1) once t >= 1/2.
fn schedule_shift(t: f64) -> f64 {
    if t <= 0.5 {
        0.0
    } else {
        ((2.0 * t).floor() - 1.0) * 0.5
    }
}

/// Scalar-curvature/time bound: R(t) * t <= c, in the direct form and in the
/// shifted-window schedule that extends it past t = 1/2.
pub fn check_curvature_time(tr: &Trajectory, c: f64) -> Result<EstimateReport, CheckError> {
    check_curvature_time_with(tr, c, &EstimateOptions::default())
}

pub fn check_curvature_time_with(
    tr: &Trajectory,
    c: f64,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    if !c.is_finite() {
        return Err(CheckError::BadConstant(format!("curvature-time constant {c}")));
    }
    let mut rows = Vec::with_capacity(2 * tr.snapshots.len());
    for snap in &tr.snapshots {
        let r = snap.spectrum.scalar_curvature();
        rows.push(row(snap.t, "lemma", c, r * snap.t));
        let shift = schedule_shift(snap.t);
        rows.push(row(snap.t, "schedule", c, r * (snap.t - shift)));
    }
    Ok(EstimateReport::from_rows(
        EstimateKind::CurvatureTime,
        rows,
        opts.tolerance,
        vec![("c".into(), c)],
    ))
}

fn check_pinching(
    tr: &Trajectory,
    p: &PinchingParams,
    kind: EstimateKind,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    let first = tr.snapshots.first().ok_or(CheckError::EmptyWindow { t_a: 0.0, t_b: 0.0 })?;
    if !p.hypothesis_holds(&first.spectrum) {
        return Err(CheckError::HypothesisViolated(format!(
            "initial spectrum {:?} misses the {} hypothesis for eps0 = {}",
            first.spectrum.as_array(),
            p.variant().name(),
            p.eps0()
        )));
    }
    let mut rows = Vec::new();
    for snap in &tr.snapshots {
        if !p.window_contains(snap.t) {
            continue;
        }
        let (lhs, rhs) = p.bound_sides(&snap.spectrum, snap.t);
        rows.push(row(snap.t, p.variant().name(), lhs, rhs));
    }
    if rows.is_empty() {
        return Err(CheckError::EmptyWindow { t_a: 0.0, t_b: p.window_end() });
    }
    Ok(EstimateReport::from_rows(kind, rows, opts.tolerance, vec![("eps0".into(), p.eps0())]))
}

/// Ricci pinching: lambda_min(Ricci) + eps(t) * w(t) * R + eps(t) >= 0 on the
/// variant's window, after checking the initial-slice hypothesis.
pub fn check_ricci_lower(tr: &Trajectory, p: &PinchingParams) -> Result<EstimateReport, CheckError> {
    check_ricci_lower_with(tr, p, &EstimateOptions::default())
}

pub fn check_ricci_lower_with(
    tr: &Trajectory,
    p: &PinchingParams,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    if !p.variant().watches_ricci() {
        return Err(CheckError::BadConstant(format!(
            "variant {} watches sectional curvature; use the sec check",
            p.variant().name()
        )));
    }
    check_pinching(tr, p, EstimateKind::RicciLower, opts)
}

/// Sectional pinching: alpha + eps(t) * w(t) * R + eps(t) >= 0, same shape as
/// the Ricci check with the smallest operator eigenvalue watched instead.
pub fn check_sec_lower(tr: &Trajectory, p: &PinchingParams) -> Result<EstimateReport, CheckError> {
    check_sec_lower_with(tr, p, &EstimateOptions::default())
}

pub fn check_sec_lower_with(
    tr: &Trajectory,
    p: &PinchingParams,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    if p.variant().watches_ricci() {
        return Err(CheckError::BadConstant(format!(
            "variant {} watches Ricci curvature; use the ricci check",
            p.variant().name()
        )));
    }
    check_pinching(tr, p, EstimateKind::SecLower, opts)
}

/// Scalar-over-smallest-eigenvalue pinching along the flow; rows where the
/// smallest eigenvalue is non-negative hold vacuously.
pub fn check_hamilton_ivey(tr: &Trajectory) -> Result<EstimateReport, CheckError> {
    check_hamilton_ivey_with(tr, &EstimateOptions::default())
}

pub fn check_hamilton_ivey_with(
    tr: &Trajectory,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    let first = tr.snapshots.first().ok_or(CheckError::EmptyWindow { t_a: 0.0, t_b: 0.0 })?;
    if first.t < 0.0 {
        return Err(CheckError::HypothesisViolated(
            "pinching defect needs a non-negative time axis".into(),
        ));
    }
    if first.spectrum.alpha() < -1.0 - 1e-12 {
        return Err(CheckError::HypothesisViolated(format!(
            "initial smallest eigenvalue {} below -1",
            first.spectrum.alpha()
        )));
    }
    let mut rows = Vec::with_capacity(tr.snapshots.len());
    for snap in &tr.snapshots {
        let r = snap.spectrum.scalar_curvature();
        let x = -snap.spectrum.alpha();
        if x <= 0.0 {
            rows.push(row(snap.t, "vacuous", r, f64::NEG_INFINITY));
        } else {
            let rhs = x * (x.ln() + (1.0 + snap.t).ln() - 3.0);
            rows.push(row(snap.t, "", r, rhs));
        }
    }
    Ok(EstimateReport::from_rows(EstimateKind::HamiltonIvey, rows, opts.tolerance, vec![]))
}

fn snapshots_in<'t>(
    tr: &'t Trajectory,
    window: (f64, f64),
) -> Result<Vec<&'t FlowSnapshot>, CheckError> {
    let picked: Vec<&FlowSnapshot> = tr
        .snapshots
        .iter()
        .filter(|s| s.t >= window.0 && s.t <= window.1)
        .collect();
    if picked.is_empty() {
        return Err(CheckError::EmptyWindow { t_a: window.0, t_b: window.1 });
    }
    Ok(picked)
}

fn require_ricci_floor(snaps: &[&FlowSnapshot], c0: f64) -> Result<(), CheckError> {
    for snap in snaps {
        let lam = snap.spectrum.ricci().lam();
        if lam < -c0 - 1e-9 {
            return Err(CheckError::HypothesisViolated(format!(
                "Ricci eigenvalue {lam} at t = {} breaches the floor -{c0}",
                snap.t
            )));
        }
    }
    Ok(())
}

fn pair_distance(snap: &FlowSnapshot, id: &str) -> Option<f64> {
    snap.tracked_pairs.iter().find(|(p, _)| p == id).map(|&(_, d)| d)
}

/// Distance and diameter evolution bounds. The spec's kind selects the form:
/// a drop bound d(t) >= d(t_a) - C * I(t) with I the integrated square root
/// of the sup curvature (closed form 2*sqrt(c*t) when the constant c is
/// given), a growth bound d(t) <= exp(c0 (t - t_a)) d(t_a), or the same
/// growth bound for the diameter against d0.
pub fn check_distance_bounds(
    tr: &Trajectory,
    spec: &EstimateSpec,
) -> Result<EstimateReport, CheckError> {
    check_distance_bounds_with(tr, spec, &EstimateOptions::default())
}

pub fn check_distance_bounds_with(
    tr: &Trajectory,
    spec: &EstimateSpec,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    spec.validate()?;
    let kind = spec.kind;
    if !matches!(
        kind,
        EstimateKind::DistanceLower | EstimateKind::DistanceUpper | EstimateKind::DiameterUpper
    ) {
        return Err(CheckError::BadConstant(format!(
            "distance bounds cannot evaluate kind {kind}"
        )));
    }
    let snaps = snapshots_in(tr, spec.window)?;
    let base = snaps[0];
    let t_a = base.t;
    // The growth bounds hold under a Ricci floor -c0; the drop bound does
    // not reference c0 at all.
    let c0 = if kind == EstimateKind::DistanceLower {
        0.0
    } else {
        let c0 = spec
            .constants
            .c0
            .ok_or_else(|| CheckError::BadConstant("growth bounds need c0".into()))?;
        require_ricci_floor(&snaps, c0)?;
        c0
    };

    let mut rows: Vec<ReportRow> = Vec::new();
    match kind {
        EstimateKind::DiameterUpper => {
            let d0 = spec
                .constants
                .d0
                .ok_or_else(|| CheckError::BadConstant("diameter bound needs d0".into()))?;
            let diam0 = base.diameter.ok_or(CheckError::MissingDiameters)?;
            if diam0 > d0 * (1.0 + 1e-12) {
                return Err(CheckError::HypothesisViolated(format!(
                    "initial diameter {diam0} exceeds d0 = {d0}"
                )));
            }
            for snap in &snaps {
                let diam = snap.diameter.ok_or(CheckError::MissingDiameters)?;
                let lhs = d0 * (c0 * (snap.t - t_a)).exp();
                rows.push(row(snap.t, "", lhs, diam));
            }
        }
        EstimateKind::DistanceUpper => {
            if base.tracked_pairs.is_empty() {
                return Err(CheckError::MissingTrackedPairs);
            }
            for (id, d_base) in &base.tracked_pairs {
                for snap in &snaps {
                    let d = pair_distance(snap, id).ok_or(CheckError::MissingTrackedPairs)?;
                    let lhs = d_base * (c0 * (snap.t - t_a)).exp();
                    rows.push(row(snap.t, id.clone(), lhs, d));
                }
            }
        }
        EstimateKind::DistanceLower => {
            if base.tracked_pairs.is_empty() {
                return Err(CheckError::MissingTrackedPairs);
            }
            let big_c = spec
                .constants
                .big_c
                .ok_or_else(|| CheckError::BadConstant("distance-lower needs C".into()))?;
            // Integrated sup-curvature: closed form for M(s) = c/s, else a
            // trapezoid over the recorded sup-curvature series.
            let integral: Vec<f64> = if let Some(c) = spec.constants.c {
                snaps
                    .iter()
                    .map(|s| 2.0 * ((c * s.t).max(0.0).sqrt() - (c * t_a).max(0.0).sqrt()))
                    .collect()
            } else {
                let series: Vec<(f64, f64)> = snaps
                    .iter()
                    .map(|s| (s.t, s.spectrum.frobenius_norm().sqrt()))
                    .collect();
                cumulative_trapezoid(&series)
            };
            for (id, d_base) in &base.tracked_pairs {
                for (snap, integ) in snaps.iter().zip(&integral) {
                    let d = pair_distance(snap, id).ok_or(CheckError::MissingTrackedPairs)?;
                    let rhs = d_base - big_c * integ;
                    rows.push(row(snap.t, id.clone(), d, rhs));
                }
            }
        }
        _ => unreachable!(),
    }
    Ok(EstimateReport::from_rows(kind, rows, opts.tolerance, spec.constants.named()))
}

/// Total-volume persistence: vol(t) >= 3 v0 / 4 along the trajectory.
pub fn check_volume_persistence(tr: &Trajectory, v0: f64) -> Result<EstimateReport, CheckError> {
    check_volume_persistence_with(tr, v0, &EstimateOptions::default())
}

pub fn check_volume_persistence_with(
    tr: &Trajectory,
    v0: f64,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(CheckError::BadConstant(format!("volume floor {v0}")));
    }
    let first = tr.snapshots.first().ok_or(CheckError::MissingVolumes)?;
    let vol0 = first.volume.ok_or(CheckError::MissingVolumes)?;
    if vol0 < v0 * (1.0 - 1e-12) {
        return Err(CheckError::HypothesisViolated(format!(
            "initial volume {vol0} below v0 = {v0}"
        )));
    }
    let mut rows = Vec::with_capacity(tr.snapshots.len());
    for snap in &tr.snapshots {
        let vol = snap.volume.ok_or(CheckError::MissingVolumes)?;
        rows.push(row(snap.t, "", vol, 0.75 * v0));
    }
    Ok(EstimateReport::from_rows(
        EstimateKind::VolumePersist,
        rows,
        opts.tolerance,
        vec![("v0".into(), v0)],
    ))
}

/// First time the total volume crosses 3 v0 / 4, sharpened between grid
/// points by bisecting dense snapshots; None when the floor holds throughout.
pub fn empirical_persistence_time(tr: &Trajectory, v0: f64) -> Result<Option<f64>, CheckError> {
    let margin_at = |snap: &FlowSnapshot| -> Result<f64, CheckError> {
        Ok(snap.volume.ok_or(CheckError::MissingVolumes)? - 0.75 * v0)
    };
    let mut prev: Option<(f64, f64)> = None;
    for snap in &tr.snapshots {
        let m = margin_at(snap)?;
        if m < 0.0 {
            let (lo, _) = prev.ok_or_else(|| {
                CheckError::HypothesisViolated("volume already below the floor at start".into())
            })?;
            let t = bisect_crossing(
                |t| {
                    let dense = tr.dense_snapshot(t).expect("bracket stays in domain");
                    dense.volume.expect("dense snapshots carry volume") - 0.75 * v0
                },
                lo,
                snap.t,
                1e-9,
            );
            return Ok(Some(t));
        }
        prev = Some((snap.t, m));
    }
    Ok(None)
}

/// Two-sided ball-volume ratio bounds l >= ratio >= eps at every profile
/// sample, plus the comparison monotonicity of the ratio column.
pub fn check_volume_ratio(tr: &Trajectory, l: f64, eps: f64) -> Result<EstimateReport, CheckError> {
    check_volume_ratio_with(tr, l, eps, &EstimateOptions::default())
}

pub fn check_volume_ratio_with(
    tr: &Trajectory,
    l: f64,
    eps: f64,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    if !(eps > 0.0 && l > eps) {
        return Err(CheckError::BadConstant(format!(
            "ratio bounds need l > eps > 0, got l = {l}, eps = {eps}"
        )));
    }
    if tr.snapshots.iter().all(|s| s.ball_profile.is_empty()) {
        return Err(CheckError::MissingProfiles);
    }
    let mut rows = Vec::new();
    for snap in &tr.snapshots {
        for w in snap.ball_profile.windows(2) {
            rows.push(row(snap.t, "monotone", w[0].1, w[1].1));
        }
        for &(_, ratio) in &snap.ball_profile {
            rows.push(row(snap.t, "upper", l, ratio));
            rows.push(row(snap.t, "lower", ratio, eps));
        }
    }
    Ok(EstimateReport::from_rows(
        EstimateKind::VolumeRatio,
        rows,
        opts.tolerance,
        vec![("l".into(), l), ("eps".into(), eps)],
    ))
}
