//! Scenario execution: build the source trajectory, run every configured
//! check, and write the artifact set.
//!
//! Artifacts, in the order they are written:
//! - `trajectory.csv`: one row per grid time with the spectrum, scalar
//!   curvature, diameter, volume, and tracked pair distances.
//! - `ball_profiles.csv`: `(t, r, ratio)` ball-volume rows (header only when
//!   the source carries no geometry).
//! - `reports.csv`: `(scenario_id, kind, t, lhs, rhs, margin, pass)` for
//!   every evaluated inequality instance; `kind` is the check tag, suffixed
//!   with `:detail` when a check has sub-forms. For checks without a time
//!   axis, `t` is a row index instead.
//! - `summary.json`: per check, the verdict with min margin, first
//!   violation, tolerance, and the constants it consumed.
//! - `necklike.csv`, `gh_convergence.csv`, `probes.csv`: present exactly
//!   when a necklike-scan, gh-convergence, or alexandrov/approx-probe check
//!   is configured.
//! - `manifest.json`: config hash, verdicts, and the inventory (name,
//!   SHA-256, bytes) of every other artifact.
//!
//! Failures inside one check (a missed hypothesis, missing volumes, a
//! sampling precondition) are recorded as error verdicts and never abort
//! the run; an error matches no expectation, so such a scenario cannot
//! pass. All floats serialize with [`format_float`]; non-finite JSON values
//! become the strings "inf", "-inf", and "nan".

use std::fs;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::config::config_sha256;
use super::{
    CheckKind, CheckOutcome, CheckSpec, CheckVerdict, Expectation, FileEntry, RunManifest,
    ScenarioConfig, ScenarioError, SourceSpec,
};
use crate::curvature::{PinchingParams, PinchingVariant};
use crate::estimates::{
    check_curvature_time_with, check_distance_bounds_with, check_hamilton_ivey_with,
    check_ricci_lower_with, check_sec_lower_with, check_volume_persistence_with,
    check_volume_ratio_with, g_monitor_with, necklike_scan, theorem61_monitor, CheckError,
    EstimateKind, EstimateOptions, EstimateReport, EstimateSpec, ReportRow,
};
use crate::flow::{family_trajectory, reaction_trajectory_on_grid, Trajectory};
use crate::metric::{
    alexandrov_check, extract_approx_from_embedding, gh_convergence_experiment,
    glue_disjoint_union, happrox_of_map, hausdorff_distance, sample_model_space,
    FiniteMetricSpace, MetricError, PointMap,
};
use crate::numerics::format_float;

/// Uniform shape every check reduces to before serialization.
struct CheckRun {
    outcome: CheckOutcome,
    min_margin: Option<f64>,
    first_violation: Option<f64>,
    tolerance: f64,
    constants: Vec<(String, f64)>,
    rows: Vec<ReportRow>,
}

impl CheckRun {
    fn from_report(rep: EstimateReport) -> CheckRun {
        CheckRun {
            outcome: if rep.pass { CheckOutcome::Pass } else { CheckOutcome::Violation },
            min_margin: Some(rep.min_margin),
            first_violation: rep.first_violation,
            tolerance: rep.tolerance,
            constants: rep.constants,
            rows: rep.rows,
        }
    }

    /// Margin fold for the metric toolkit tasks, mirroring the estimate
    /// reports: pass iff no row dips below -tolerance.
    fn from_rows(
        rows: Vec<ReportRow>,
        tolerance: f64,
        constants: Vec<(String, f64)>,
    ) -> CheckRun {
        let min_margin = rows.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
        let first_violation = rows.iter().find(|r| r.margin < -tolerance).map(|r| r.t);
        CheckRun {
            outcome: if first_violation.is_none() {
                CheckOutcome::Pass
            } else {
                CheckOutcome::Violation
            },
            min_margin: Some(min_margin),
            first_violation,
            tolerance,
            constants,
            rows,
        }
    }

    fn error(message: String, tolerance: f64) -> CheckRun {
        CheckRun {
            outcome: CheckOutcome::Error(message),
            min_margin: None,
            first_violation: None,
            tolerance,
            constants: Vec::new(),
            rows: Vec::new(),
        }
    }
}

/// Side files fed by specific check kinds, in config order.
#[derive(Default)]
struct Extras {
    necklike: Option<String>,
    gh: Option<String>,
    probes: Option<String>,
}

impl Extras {
    fn necklike(&mut self) -> &mut String {
        self.necklike.get_or_insert_with(|| "t,essential,necklike,defect\n".to_string())
    }

    fn gh(&mut self) -> &mut String {
        self.gh.get_or_insert_with(|| "t,scale,bound\n".to_string())
    }

    fn probes(&mut self) -> &mut String {
        self.probes.get_or_insert_with(|| "check,i,j,k,s,margin\n".to_string())
    }
}

fn mk_row(t: f64, detail: &str, lhs: f64, rhs: f64) -> ReportRow {
    let margin = if lhs == rhs { 0.0 } else { lhs - rhs };
    ReportRow { t, detail: detail.to_string(), lhs, rhs, margin }
}

fn req(value: Option<f64>, what: &str) -> Result<f64, CheckError> {
    value.ok_or_else(|| CheckError::BadConstant(format!("missing constant {what}")))
}

fn estimate_options(check: &CheckSpec) -> EstimateOptions {
    let mut opts = EstimateOptions::default();
    if let Some(tol) = check.tol {
        opts.tolerance = tol;
    }
    opts
}

fn run_estimate(
    kind: EstimateKind,
    check: &CheckSpec,
    tr: &Trajectory,
    extras: &mut Extras,
) -> Result<CheckRun, CheckError> {
    let opts = estimate_options(check);
    let c = &check.constants;
    let span = {
        let first = tr.snapshots.first().map(|s| s.t).unwrap_or(0.0);
        let last = tr.snapshots.last().map(|s| s.t).unwrap_or(0.0);
        (first, last)
    };
    let rep = match kind {
        EstimateKind::CurvatureTime => {
            check_curvature_time_with(tr, req(c.c, "c")?, &opts)?
        }
        EstimateKind::RicciLower => {
            let variant = check.variant.unwrap_or(PinchingVariant::RicciScaled);
            let params = PinchingParams::new(variant, req(c.eps0, "eps0")?)?;
            check_ricci_lower_with(tr, &params, &opts)?
        }
        EstimateKind::SecLower => {
            let variant = check.variant.unwrap_or(PinchingVariant::SecScaled);
            let params = PinchingParams::new(variant, req(c.eps0, "eps0")?)?;
            check_sec_lower_with(tr, &params, &opts)?
        }
        EstimateKind::HamiltonIvey => check_hamilton_ivey_with(tr, &opts)?,
        EstimateKind::DistanceLower | EstimateKind::DistanceUpper | EstimateKind::DiameterUpper => {
            let window = check.window.unwrap_or(span);
            let spec = EstimateSpec::new(kind, check.constants, window);
            check_distance_bounds_with(tr, &spec, &opts)?
        }
        EstimateKind::VolumePersist => {
            check_volume_persistence_with(tr, req(c.v0, "v0")?, &opts)?
        }
        EstimateKind::VolumeRatio => {
            check_volume_ratio_with(tr, req(c.l, "l")?, req(c.eps, "eps")?, &opts)?
        }
        EstimateKind::GMonitor => g_monitor_with(tr, req(c.delta, "delta")?, &opts)?,
        EstimateKind::NecklikeScan => {
            let threshold = req(c.big_c, "C")?;
            let delta = req(c.delta, "delta")?;
            let scan = necklike_scan(tr, threshold, delta)?;
            let csv = extras.necklike();
            let mut rows = Vec::with_capacity(2 * scan.len());
            for (snap, neck) in tr.snapshots.iter().zip(&scan) {
                let size = snap.spectrum.frobenius_norm() * snap.t.abs();
                rows.push(mk_row(neck.t, "essential", size, threshold));
                if let Some(defect) = neck.defect {
                    rows.push(mk_row(neck.t, "necklike", delta, defect));
                }
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    format_float(neck.t),
                    neck.essential,
                    neck.necklike,
                    neck.defect.map(format_float).unwrap_or_default()
                ));
            }
            EstimateReport::from_rows(
                EstimateKind::NecklikeScan,
                rows,
                opts.tolerance,
                vec![("C".into(), threshold), ("delta".into(), delta)],
            )
        }
        EstimateKind::Theorem61Window => {
            let v0 = req(c.v0, "v0")?;
            let d0 = req(c.d0, "d0")?;
            let window = theorem61_monitor(tr, v0, d0)?;
            let mut rows = vec![
                mk_row(window.t_prime, "t-prime", window.t_prime, 0.0),
                mk_row(window.t_double_prime, "t-double-prime", window.t_double_prime, 0.0),
                mk_row(window.t_triple_prime, "t-triple-prime", window.t_triple_prime, 0.0),
            ];
            let mut constants = vec![
                ("v0".to_string(), v0),
                ("d0".to_string(), d0),
                ("t-prime".to_string(), window.t_prime),
                ("t-double-prime".to_string(), window.t_double_prime),
                ("t-triple-prime".to_string(), window.t_triple_prime),
                ("sup-rt".to_string(), window.sup_rt),
            ];
            if let Some(bound) = c.c {
                rows.push(mk_row(window.t_prime, "sup-rt", bound, window.sup_rt));
                constants.push(("c".to_string(), bound));
            }
            EstimateReport::from_rows(
                EstimateKind::Theorem61Window,
                rows,
                opts.tolerance,
                constants,
            )
        }
    };
    Ok(CheckRun::from_report(rep))
}

/// Euclidean sample for the approx-probe task: n points in a 3-cube.
fn random_euclidean(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let pts: Vec<[f64; 3]> =
        (0..n).map(|_| std::array::from_fn(|_| rng.random_range(0.0..3.0))).collect();
    let matrix: Vec<Vec<f64>> = pts
        .iter()
        .map(|p| {
            pts.iter()
                .map(|q| {
                    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::new(&matrix).expect("euclidean matrices satisfy the axioms")
}

fn run_metric(
    cfg: &ScenarioConfig,
    check: &CheckSpec,
    extras: &mut Extras,
) -> Result<CheckRun, MetricError> {
    let opts = estimate_options(check);
    match check.kind {
        CheckKind::GhConvergence => {
            let SourceSpec::Family { family, .. } = &cfg.source else {
                return Err(MetricError::BadParameter(
                    "gh-convergence needs a closed-form family source".into(),
                ));
            };
            let n = check.points.expect("validated");
            let times = cfg.grid_times();
            let series = gh_convergence_experiment(family, &times, n, cfg.seed)?;
            let diam0 = sample_model_space(family, n, cfg.seed)?.diameter();
            let csv = extras.gh();
            let mut rows = Vec::with_capacity(series.len());
            for point in &series {
                // The search starts from the rank-aligned map, which is the
                // identity between a sample and its rescaling, so the bound
                // never exceeds twice the identity's distortion.
                rows.push(mk_row(
                    point.t,
                    "identity-envelope",
                    2.0 * (1.0 - point.scale) * diam0,
                    point.bound,
                ));
                csv.push_str(&format!(
                    "{},{},{}\n",
                    format_float(point.t),
                    format_float(point.scale),
                    format_float(point.bound)
                ));
            }
            Ok(CheckRun::from_rows(
                rows,
                opts.tolerance,
                vec![("n".into(), n as f64), ("diam0".into(), diam0)],
            ))
        }
        CheckKind::Alexandrov => {
            let SourceSpec::Family { family, .. } = &cfg.source else {
                return Err(MetricError::BadParameter(
                    "alexandrov needs a closed-form family source".into(),
                ));
            };
            let n = check.points.expect("validated");
            let k = check.k.expect("validated");
            let space = sample_model_space(family, n, cfg.seed)?;
            let tol = check.tol.unwrap_or(1e-6 * space.diameter());
            let report = alexandrov_check(&space, k, tol)?;
            let probes = extras.probes();
            for v in &report.violations {
                probes.push_str(&format!(
                    "alexandrov,{},{},{},{},{}\n",
                    v.p,
                    v.q,
                    v.r,
                    v.s,
                    format_float(v.margin)
                ));
            }
            let rows = vec![mk_row(0.0, "min-margin", report.min_margin, 0.0)];
            Ok(CheckRun::from_rows(
                rows,
                tol,
                vec![
                    ("k".into(), k),
                    ("n".into(), n as f64),
                    ("membership-tol".into(), tol),
                    ("checked".into(), report.checked as f64),
                    ("skipped".into(), report.skipped_triangles as f64),
                ],
            ))
        }
        CheckKind::ApproxProbe => {
            let pairs = check.pairs.expect("validated");
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut rows = Vec::with_capacity(2 * pairs);
            for pair in 0..pairs {
                let nx = rng.random_range(2..=5);
                let ny = rng.random_range(2..=5);
                let x = random_euclidean(&mut rng, nx);
                let y = random_euclidean(&mut rng, ny);
                let image: Vec<usize> = (0..nx).map(|_| rng.random_range(0..ny)).collect();
                let map = PointMap::new(x.clone(), y.clone(), image)?;
                // Any map is a nu-approximation for its own quality, so the
                // sandwich bounds below must hold identically.
                let nu = happrox_of_map(&map).nu + 1e-9;
                let glued = glue_disjoint_union(&x, &y, &map, nu)?;
                let x_img: Vec<usize> = (0..nx).collect();
                let y_img: Vec<usize> = (nx..nx + ny).collect();
                let hausdorff = hausdorff_distance(&glued, &x_img, &y_img)?;
                rows.push(mk_row(pair as f64, "glue-hausdorff", 2.0 * nu, hausdorff));
                let cert = extract_approx_from_embedding(&glued, &x_img, &y_img, hausdorff)?;
                rows.push(mk_row(pair as f64, "extract-quality", 2.0 * hausdorff, cert.nu));
                let probes = extras.probes();
                probes.push_str(&format!(
                    "glue,{pair},{nx},{ny},,{}\n",
                    format_float(2.0 * nu - hausdorff)
                ));
                probes.push_str(&format!(
                    "extract,{pair},{nx},{ny},,{}\n",
                    format_float(2.0 * hausdorff - cert.nu)
                ));
            }
            Ok(CheckRun::from_rows(
                rows,
                opts.tolerance,
                vec![("pairs".into(), pairs as f64)],
            ))
        }
        CheckKind::Estimate(_) => unreachable!("estimates dispatch through run_estimate"),
    }
}

fn run_check(
    cfg: &ScenarioConfig,
    check: &CheckSpec,
    tr: &Trajectory,
    extras: &mut Extras,
) -> CheckRun {
    let tolerance = estimate_options(check).tolerance;
    let outcome = match check.kind {
        CheckKind::Estimate(kind) => {
            run_estimate(kind, check, tr, extras).map_err(|e| e.to_string())
        }
        _ => run_metric(cfg, check, extras).map_err(|e| e.to_string()),
    };
    outcome.unwrap_or_else(|message| CheckRun::error(message, tolerance))
}

fn build_trajectory(source: &SourceSpec, grid: &[f64]) -> Result<Trajectory, ScenarioError> {
    let tr = match source {
        SourceSpec::Family { family, .. } => family_trajectory(family, grid)?,
        SourceSpec::Reaction { initial, tol, .. } => {
            reaction_trajectory_on_grid(initial, grid, *tol)?
        }
    };
    let shift = source.shift();
    Ok(if shift != 0.0 { tr.shifted(shift) } else { tr })
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// Finite floats are bare JSON numbers; inf and nan become strings so the
/// document stays standard JSON.
fn json_num(v: f64) -> String {
    if v.is_finite() {
        format_float(v)
    } else {
        format!("\"{}\"", format_float(v))
    }
}

fn json_opt(v: Option<f64>) -> String {
    v.map(json_num).unwrap_or_else(|| "null".to_string())
}

fn summary_json(
    cfg: &ScenarioConfig,
    pass: bool,
    entries: &[(usize, &CheckSpec, &CheckRun, bool)],
) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"scenario_id\": \"{}\",\n", json_escape(&cfg.scenario_id)));
    out.push_str(&format!("  \"seed\": {},\n", cfg.seed));
    out.push_str(&format!("  \"pass\": {pass},\n"));
    out.push_str("  \"checks\": [\n");
    for (pos, (index, check, run, matched)) in entries.iter().enumerate() {
        out.push_str("    {\n");
        out.push_str(&format!("      \"index\": {index},\n"));
        out.push_str(&format!("      \"check\": \"{}\",\n", check.kind.as_str()));
        out.push_str(&format!("      \"expect\": \"{}\",\n", check.expect.as_str()));
        out.push_str(&format!("      \"outcome\": \"{}\",\n", run.outcome.label()));
        if let CheckOutcome::Error(message) = &run.outcome {
            out.push_str(&format!("      \"error\": \"{}\",\n", json_escape(message)));
        }
        out.push_str(&format!("      \"matched\": {matched},\n"));
        out.push_str(&format!("      \"min_margin\": {},\n", json_opt(run.min_margin)));
        out.push_str(&format!(
            "      \"first_violation\": {},\n",
            json_opt(run.first_violation)
        ));
        out.push_str(&format!("      \"tolerance\": {},\n", json_num(run.tolerance)));
        out.push_str("      \"constants\": {");
        for (cpos, (name, value)) in run.constants.iter().enumerate() {
            if cpos > 0 {
                out.push_str(", ");
            }
            out.push_str(&format!("\"{}\": {}", json_escape(name), json_num(*value)));
        }
        out.push_str("}\n");
        out.push_str(if pos + 1 < entries.len() { "    },\n" } else { "    }\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

fn manifest_json(
    cfg: &ScenarioConfig,
    config_sha: &str,
    pass: bool,
    verdicts: &[CheckVerdict],
    files: &[FileEntry],
) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"scenario_id\": \"{}\",\n", json_escape(&cfg.scenario_id)));
    out.push_str(&format!("  \"config_sha256\": \"{config_sha}\",\n"));
    out.push_str(&format!("  \"pass\": {pass},\n"));
    out.push_str("  \"verdicts\": [\n");
    for (pos, v) in verdicts.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"index\": {}, \"check\": \"{}\", \"expect\": \"{}\", \"outcome\": \"{}\", \"matched\": {}, \"min_margin\": {}, \"first_violation\": {}}}{}\n",
            v.index,
            v.kind.as_str(),
            v.expect.as_str(),
            v.outcome.label(),
            v.matched,
            json_opt(v.min_margin),
            json_opt(v.first_violation),
            if pos + 1 < verdicts.len() { "," } else { "" }
        ));
    }
    out.push_str("  ],\n");
    out.push_str("  \"files\": [\n");
    for (pos, f) in files.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"name\": \"{}\", \"sha256\": \"{}\", \"bytes\": {}}}{}\n",
            json_escape(&f.name),
            f.sha256,
            f.bytes,
            if pos + 1 < files.len() { "," } else { "" }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Runs one scenario and writes its artifacts under `cfg.out_dir`.
///
/// Returns the manifest, whose `pass` says whether every check matched its
/// expectation. The only hard failures are config problems, a source that
/// cannot be built, and I/O; everything else is a per-check verdict.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<RunManifest, ScenarioError> {
    let started = Instant::now();
    cfg.validate()?;
    let grid = cfg.grid_times();
    let tr = build_trajectory(&cfg.source, &grid)?;
    fs::create_dir_all(&cfg.out_dir)?;

    let mut extras = Extras::default();
    let mut verdicts = Vec::with_capacity(cfg.checks.len());
    let mut runs = Vec::with_capacity(cfg.checks.len());
    let mut reports_csv = String::from("scenario_id,kind,t,lhs,rhs,margin,pass\n");

    for (pos, check) in cfg.checks.iter().enumerate() {
        let index = pos + 1;
        let run = run_check(cfg, check, &tr, &mut extras);
        for row in &run.rows {
            let kind_label = if row.detail.is_empty() {
                check.kind.as_str().to_string()
            } else {
                format!("{}:{}", check.kind.as_str(), row.detail)
            };
            reports_csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                cfg.scenario_id,
                kind_label,
                format_float(row.t),
                format_float(row.lhs),
                format_float(row.rhs),
                format_float(row.margin),
                row.margin >= -run.tolerance
            ));
        }
        let matched = matches!(
            (&run.outcome, check.expect),
            (CheckOutcome::Pass, Expectation::Pass)
                | (CheckOutcome::Violation, Expectation::Violation)
        );
        verdicts.push(CheckVerdict {
            index,
            kind: check.kind,
            expect: check.expect,
            outcome: run.outcome.clone(),
            matched,
            min_margin: run.min_margin,
            first_violation: run.first_violation,
        });
        runs.push(run);
    }
    let pass = verdicts.iter().all(|v| v.matched);

    let entries: Vec<(usize, &CheckSpec, &CheckRun, bool)> = cfg
        .checks
        .iter()
        .zip(&runs)
        .zip(&verdicts)
        .map(|((check, run), verdict)| (verdict.index, check, run, verdict.matched))
        .collect();
    let summary = summary_json(cfg, pass, &entries);

    let mut artifacts: Vec<(String, String)> = vec![
        ("trajectory.csv".to_string(), tr.to_csv()),
        ("ball_profiles.csv".to_string(), tr.profiles_to_csv()),
        ("reports.csv".to_string(), reports_csv),
        ("summary.json".to_string(), summary),
    ];
    if let Some(csv) = extras.necklike.take() {
        artifacts.push(("necklike.csv".to_string(), csv));
    }
    if let Some(csv) = extras.gh.take() {
        artifacts.push(("gh_convergence.csv".to_string(), csv));
    }
    if let Some(csv) = extras.probes.take() {
        artifacts.push(("probes.csv".to_string(), csv));
    }

    let mut files = Vec::with_capacity(artifacts.len() + 1);
    for (name, content) in &artifacts {
        fs::write(cfg.out_dir.join(name), content)?;
        files.push(FileEntry {
            name: name.clone(),
            sha256: sha256_hex(content.as_bytes()),
            bytes: content.len() as u64,
        });
    }
    let config_sha = config_sha256(cfg);
    let manifest = manifest_json(cfg, &config_sha, pass, &verdicts, &files);
    fs::write(cfg.out_dir.join("manifest.json"), &manifest)?;
    files.push(FileEntry {
        name: "manifest.json".to_string(),
        sha256: sha256_hex(manifest.as_bytes()),
        bytes: manifest.len() as u64,
    });

    Ok(RunManifest {
        scenario_id: cfg.scenario_id.clone(),
        config_sha256: config_sha,
        verdicts,
        files,
        pass,
        duration: started.elapsed(),
    })
}
