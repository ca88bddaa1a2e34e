//! Numerical toolkit for 3d curvature evolution: eigenvalue algebra for the
//! curvature operator, closed-form model flows with an adaptive reaction-ODE
//! integrator, inequality checkers that turn analytic estimates into margin
//! reports, and a finite metric-space kit (Gromov-Hausdorff bounds, comparison
//! triangles, Alexandrov checks). The `scenario` module drives everything from
//! flat key-value config files and writes deterministic CSV/JSON artifacts.

pub mod curvature;
pub mod estimates;
pub mod flow;
pub mod metric;
pub mod numerics;
pub mod scenario;

pub use curvature::{
    eta_exponent, g_quantity, is_essential, necklike_defect, split_two_form, n11_boundary_value,
    CurvatureError, OperatorSpectrum, PinchingParams, PinchingVariant, RicciSpectrum, TwoForm3,
};
pub use estimates::{
    check_curvature_time, check_distance_bounds, check_hamilton_ivey, check_ricci_lower,
    check_sec_lower, check_volume_persistence, check_volume_ratio, empirical_persistence_time,
    g_monitor, necklike_scan, theorem61_monitor, CheckError, EstimateKind, EstimateOptions,
    EstimateReport, EstimateSpec, NeckRow, ReportRow, SpecConstants, TheoremWindow,
};
pub use flow::{
    blow_up_time, family_trajectory, injectivity_lower_bound, integrate_reaction,
    reaction_trajectory_on_grid, AsymptoticRatio, FlowError, FlowSnapshot, IntegratorOptions,
    ModelFamily, RescaleTransform, Trajectory, TrajectorySource,
};
pub use metric::{
    alexandrov_check, comparison_triangle, curve_length, extract_approx_from_embedding,
    gh_convergence_experiment, gh_upper_bound, glue_disjoint_union, happrox_of_map,
    hausdorff_distance, intrinsic_check, model_side_distance, sample_model_space,
    validate_metric, AlexandrovReport, AlexandrovViolation, ApproximationCert,
    ComparisonTriangle, FiniteMetricSpace, GhRow, MetricError, MetricViolation, PointMap, Side,
};
pub use scenario::{
    builtin_scenario, diff_reports, list_builtin_scenarios, parse_config, render_config,
    run_scenario, BuiltinScenario, CheckKind, CheckOutcome, CheckSpec, CheckVerdict, DiffSummary,
    Expectation, FileEntry, GridSpec, RunManifest, ScenarioConfig, ScenarioError, SourceSpec,
};
