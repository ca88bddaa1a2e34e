//! Composite monitors: the short-time window bookkeeping, the weighted
//! traceless decay monitor, and the neck scan.

use crate::curvature::{eta_exponent, g_quantity, is_essential, necklike_defect};
use crate::estimates::{row, CheckError, EstimateKind, EstimateOptions, EstimateReport};
use crate::flow::Trajectory;

/// Derived times and first-failure records for the short-time control
/// window of a unit-ball-sized slice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoremWindow {
    /// First grid time with vol <= v0 / 2, if any.
    pub vol_violation: Option<f64>,
    /// First grid time with a Ricci eigenvalue below -1, if any.
    pub ricci_violation: Option<f64>,
    /// First grid time with diameter above 5 d0, if any.
    pub diam_violation: Option<f64>,
    /// Earliest of the three failures, or the last grid time.
    pub t_prime: f64,
    /// sup of R * t over grid times up to t_prime.
    pub sup_rt: f64,
    /// min(t_prime, 1/200).
    pub t_double_prime: f64,
    /// First grid time up to t_double_prime with a Ricci eigenvalue below
    /// -1/2, if any.
    pub ricci_half_violation: Option<f64>,
    /// First grid time with vol <= 3 v0 / 4, or the last grid time.
    pub t_triple_prime: f64,
}

/// Tracks how long the volume floor, Ricci floor and diameter cap survive
/// along a trajectory, and what curvature-time level the surviving window
/// exhibits. Volume and diameter conditions are vacuous on snapshots that do
/// not carry those fields, so purely spectral trajectories monitor the Ricci
/// conditions alone.
pub fn theorem61_monitor(tr: &Trajectory, v0: f64, d0: f64) -> Result<TheoremWindow, CheckError> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(CheckError::BadConstant(format!("volume floor {v0}")));
    }
    if !(d0 > 0.0 && d0.is_finite()) {
        return Err(CheckError::BadConstant(format!("diameter cap {d0}")));
    }
    let first = tr
        .snapshots
        .first()
        .ok_or(CheckError::EmptyWindow { t_a: 0.0, t_b: 0.0 })?;
    if let Some(vol0) = first.volume {
        if vol0 < v0 * (1.0 - 1e-12) {
            return Err(CheckError::HypothesisViolated(format!(
                "initial volume {vol0} below v0 = {v0}"
            )));
        }
    }
    if let Some(diam0) = first.diameter {
        if diam0 > d0 * (1.0 + 1e-12) {
            return Err(CheckError::HypothesisViolated(format!(
                "initial diameter {diam0} above d0 = {d0}"
            )));
        }
    }

    let last_t = tr.snapshots.last().map(|s| s.t).unwrap_or(first.t);
    let mut vol_violation = None;
    let mut ricci_violation = None;
    let mut diam_violation = None;
    let mut t_triple_prime = None;
    for snap in &tr.snapshots {
        if let Some(vol) = snap.volume {
            if vol_violation.is_none() && vol <= 0.5 * v0 {
                vol_violation = Some(snap.t);
            }
            if t_triple_prime.is_none() && vol <= 0.75 * v0 {
                t_triple_prime = Some(snap.t);
            }
        }
        if ricci_violation.is_none() && snap.spectrum.ricci().lam() < -1.0 {
            ricci_violation = Some(snap.t);
        }
        if let Some(diam) = snap.diameter {
            if diam_violation.is_none() && diam > 5.0 * d0 {
                diam_violation = Some(snap.t);
            }
        }
    }
    let t_prime = [vol_violation, ricci_violation, diam_violation]
        .into_iter()
        .flatten()
        .fold(f64::INFINITY, f64::min)
        .min(last_t);
    let sup_rt = tr
        .snapshots
        .iter()
        .filter(|s| s.t <= t_prime)
        .map(|s| s.spectrum.scalar_curvature() * s.t)
        .fold(f64::NEG_INFINITY, f64::max);
    let t_double_prime = t_prime.min(1.0 / 200.0);
    let ricci_half_violation = tr
        .snapshots
        .iter()
        .filter(|s| s.t <= t_double_prime)
        .find(|s| s.spectrum.ricci().lam() < -0.5)
        .map(|s| s.t);

    Ok(TheoremWindow {
        vol_violation,
        ricci_violation,
        diam_violation,
        t_prime,
        sup_rt,
        t_double_prime,
        ricci_half_violation,
        t_triple_prime: t_triple_prime.unwrap_or(last_t),
    })
}

/// Decay monitor for G = |t|^(eps/2) |traceless|^2 / R^(2-eps) on
/// negative-time trajectories: no grid point may set a new running maximum,
/// and every value must sit under the envelope c B^eps / |t|^(eps/2) with
/// B = sup |t| |spectrum|.
///
/// This watches reaction data only; it is an experimental consistency probe,
/// not a verified inequality, and genuinely fails on spatially inhomogeneous
/// history.
pub fn g_monitor(tr: &Trajectory, delta: f64) -> Result<EstimateReport, CheckError> {
    g_monitor_with(tr, delta, &EstimateOptions::default())
}

pub fn g_monitor_with(
    tr: &Trajectory,
    delta: f64,
    opts: &EstimateOptions,
) -> Result<EstimateReport, CheckError> {
    let eps = eta_exponent(delta)?;
    let mut values = Vec::with_capacity(tr.snapshots.len());
    let mut sup_b = 0.0_f64;
    for snap in &tr.snapshots {
        values.push((snap.t, g_quantity(&snap.spectrum, snap.t, eps)?));
        sup_b = sup_b.max(snap.t.abs() * snap.spectrum.frobenius_norm());
    }
    let mut rows = Vec::with_capacity(2 * values.len());
    let mut running_max = f64::NEG_INFINITY;
    for &(t, g) in &values {
        if running_max.is_finite() {
            rows.push(row(t, "monotone", running_max, g));
        }
        rows.push(row(t, "envelope", opts.envelope_const * sup_b.powf(eps) / t.abs().powf(eps / 2.0), g));
        running_max = running_max.max(g);
    }
    Ok(EstimateReport::from_rows(
        EstimateKind::GMonitor,
        rows,
        opts.tolerance,
        vec![("delta".into(), delta), ("eps".into(), eps)],
    ))
}

/// One grid time of the neck scan.
#[derive(Debug, Clone, PartialEq)]
pub struct NeckRow {
    pub t: f64,
    /// |spectrum| * |t| >= C: curvature is large against the elapsed time.
    pub essential: bool,
    /// Defect at most delta.
    pub necklike: bool,
    /// Relative distance to the nearest rank-one curvature form; None on a
    /// flat spectrum, where neither classification applies.
    pub defect: Option<f64>,
}

/// Classifies every grid time as essential and/or necklike. Flat spectra
/// produce a row with both flags down rather than an error, so scans over
/// mixed trajectories stay total.
pub fn necklike_scan(tr: &Trajectory, c: f64, delta: f64) -> Result<Vec<NeckRow>, CheckError> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(CheckError::BadConstant(format!("essential threshold {c}")));
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(CheckError::BadConstant(format!("neck threshold {delta}")));
    }
    let mut out = Vec::with_capacity(tr.snapshots.len());
    for snap in &tr.snapshots {
        if snap.spectrum.is_zero() {
            out.push(NeckRow { t: snap.t, essential: false, necklike: false, defect: None });
            continue;
        }
        let (defect, _) = necklike_defect(&snap.spectrum)?;
        out.push(NeckRow {
            t: snap.t,
            essential: is_essential(&snap.spectrum, snap.t, c),
            necklike: defect <= delta,
            defect: Some(defect),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::OperatorSpectrum;
    use crate::flow::{
        blow_up_time, family_trajectory, reaction_trajectory_on_grid, ModelFamily,
    };
    use crate::numerics::linspace;

    fn sphere_traj(t_end: f64, steps: usize) -> Trajectory {
        let fam = ModelFamily::round_sphere(1.0, 1).unwrap();
        family_trajectory(&fam, &linspace(0.0, t_end, steps)).unwrap()
    }

    #[test]
    fn window_chain_on_the_shrinking_sphere() {
        let tr = sphere_traj(0.12, 240);
        let step = 0.12 / 240.0;
        let v0 = tr.snapshots[0].volume.unwrap();
        let d0 = tr.snapshots[0].diameter.unwrap();
        let w = theorem61_monitor(&tr, v0, d0).unwrap();

        // vol = v0 (1-4t)^(3/2) halves at t = (1 - 2^(-2/3)) / 4.
        let s_half = (1.0 - 0.5_f64.powf(2.0 / 3.0)) / 4.0;
        let vol_t = w.vol_violation.unwrap();
        assert!(vol_t >= s_half && vol_t - s_half <= step + 1e-12);
        assert_eq!(w.ricci_violation, None);
        assert_eq!(w.diam_violation, None);
        assert_eq!(w.t_prime, vol_t);

        // R t = 6t / (1-4t) increases, so the sup sits at t_prime.
        let expect = 6.0 * vol_t / (1.0 - 4.0 * vol_t);
        assert!((w.sup_rt - expect).abs() < 1e-9);

        assert_eq!(w.t_double_prime, 1.0 / 200.0);
        assert_eq!(w.ricci_half_violation, None);

        // vol drops to 3 v0 / 4 at t = (1 - (3/4)^(2/3)) / 4.
        let s_3q = 0.043629546944085829;
        let t3 = w.t_triple_prime;
        assert!(t3 >= s_3q && t3 - s_3q <= step + 1e-12);
    }

    #[test]
    fn window_hypotheses_are_checked_when_fields_exist() {
        let tr = sphere_traj(0.1, 4);
        let v0 = tr.snapshots[0].volume.unwrap();
        let d0 = tr.snapshots[0].diameter.unwrap();
        assert!(matches!(
            theorem61_monitor(&tr, v0 * 1.5, d0),
            Err(CheckError::HypothesisViolated(_))
        ));
        assert!(matches!(
            theorem61_monitor(&tr, v0, d0 * 0.5),
            Err(CheckError::HypothesisViolated(_))
        ));
        assert!(theorem61_monitor(&tr, -1.0, d0).is_err());
    }

    #[test]
    fn window_is_spectral_only_on_reaction_data() {
        // No volumes or diameters recorded: those conditions are vacuous and
        // the Ricci conditions drive the window.
        let s0 = OperatorSpectrum::new(-2.2, 0.05, 0.05);
        let grid = linspace(0.0, 0.01, 4);
        let tr = reaction_trajectory_on_grid(&s0, &grid, 1e-10).unwrap();
        let w = theorem61_monitor(&tr, 1.0, 1.0).unwrap();
        assert_eq!(w.vol_violation, None);
        assert_eq!(w.diam_violation, None);
        assert_eq!(w.ricci_violation, Some(0.0), "lambda = -1.075 at t = 0");
        assert_eq!(w.t_prime, 0.0);
        assert_eq!(w.sup_rt, 0.0);
        assert_eq!(w.t_double_prime, 0.0);
        assert_eq!(w.ricci_half_violation, Some(0.0));
        assert_eq!(w.t_triple_prime, *grid.last().unwrap());
    }

    #[test]
    fn g_monitor_is_zero_on_round_spectra() {
        let s0 = OperatorSpectrum::new(1.0, 1.0, 1.0);
        let tr = reaction_trajectory_on_grid(&s0, &linspace(0.0, 0.4, 16), 1e-10)
            .unwrap()
            .shifted(-2.0);
        let rep = g_monitor(&tr, 1.0).unwrap();
        assert!(rep.pass);
        for r in rep.rows.iter().filter(|r| r.detail == "monotone") {
            assert!(r.rhs.abs() < 1e-20, "round spectra carry no traceless part");
        }
    }

    #[test]
    fn g_monitor_holds_on_the_negative_time_neck_window() {
        let s0 = OperatorSpectrum::new(0.0, 1.0, 1.0);
        let blow = blow_up_time(&s0).unwrap();
        let end = (0.95 * blow).min(1.0);
        let tr = reaction_trajectory_on_grid(&s0, &linspace(0.0, end, 60), 1e-10)
            .unwrap()
            .shifted(-2.0);
        let delta = 1.0;
        let rep = g_monitor(&tr, delta).unwrap();
        assert!(rep.pass, "min margin {}", rep.min_margin);

        // Recompute the first value independently of the report plumbing.
        let eps = eta_exponent(delta).unwrap();
        let g0 = g_quantity(&tr.snapshots[0].spectrum, tr.snapshots[0].t, eps).unwrap();
        let expect = 2.0_f64.powf(eps / 2.0) * (2.0 / 3.0) / 2.0_f64.powf(2.0 - eps);
        assert!((g0 - expect).abs() < 1e-12);
        let envelope0 = rep
            .rows
            .iter()
            .find(|r| r.t == tr.snapshots[0].t && r.detail == "envelope")
            .unwrap();
        assert!(envelope0.lhs > g0);
    }

    #[test]
    fn g_monitor_propagates_domain_errors() {
        // Non-negative times are rejected.
        let tr = sphere_traj(0.1, 4);
        assert!(matches!(g_monitor(&tr, 1.0), Err(CheckError::Curvature(_))));

        // Flat spectra have R = 0.
        let fam = ModelFamily::flat_torus([1.0, 1.0, 1.0]).unwrap();
        let tr = family_trajectory(&fam, &linspace(0.0, 1.0, 4))
            .unwrap()
            .shifted(-3.0);
        assert!(matches!(g_monitor(&tr, 1.0), Err(CheckError::Curvature(_))));

        // Threshold outside (0, 3) never reaches evaluation.
        let s0 = OperatorSpectrum::new(0.0, 1.0, 1.0);
        let tr = reaction_trajectory_on_grid(&s0, &[0.0, 0.1], 1e-10)
            .unwrap()
            .shifted(-1.0);
        assert!(g_monitor(&tr, 3.0).is_err());
    }

    #[test]
    fn neck_scan_classifies_the_standard_spectra() {
        // Flat: no defect, nothing flagged.
        let fam = ModelFamily::flat_torus([1.0, 1.0, 1.0]).unwrap();
        let tr = family_trajectory(&fam, &linspace(0.0, 1.0, 4)).unwrap();
        for r in necklike_scan(&tr, 0.2, 0.1).unwrap() {
            assert!(!r.essential && !r.necklike && r.defect.is_none());
        }

        // Neck spectrum: defect 0, essential once |spectrum| t reaches C.
        let s0 = OperatorSpectrum::new(0.0, 0.0, 2.0);
        let tr = reaction_trajectory_on_grid(&s0, &linspace(0.0, 0.4, 16), 1e-10).unwrap();
        let rows = necklike_scan(&tr, 0.2, 0.1).unwrap();
        assert!(rows.iter().all(|r| r.necklike));
        assert!(rows.iter().all(|r| r.defect.unwrap() < 1e-9));
        assert!(!rows[0].essential, "t = 0 cannot be essential");
        // gamma(t) = 2 / (1-2t), so |spectrum| t = 2t/(1-2t) >= 0.2 from
        // t = 1/12 onward.
        for r in &rows {
            assert_eq!(r.essential, r.t >= 1.0 / 12.0 - 1e-12, "t = {}", r.t);
        }

        // Round spectrum: defect sqrt(2) exceeds any delta < sqrt(2).
        let tr = sphere_traj(0.2, 4);
        let rows = necklike_scan(&tr, 0.2, 1.0).unwrap();
        assert!(rows.iter().all(|r| !r.necklike));
        assert!(rows
            .iter()
            .all(|r| (r.defect.unwrap() - std::f64::consts::SQRT_2).abs() < 1e-12));
        assert!(rows.last().unwrap().essential);

        assert!(necklike_scan(&tr, -1.0, 0.1).is_err());
        assert!(necklike_scan(&tr, 0.2, 0.0).is_err());
    }
}
