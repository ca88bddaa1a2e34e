//! Command-line front end: scenario runner, builtin catalog, report diff,
//! and direct access to the flow tables and metric-space tools.
//!
//! Exit codes: 0 when everything passed, 1 when a check or comparison
//! failed, 2 for configuration and input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use riccilab_core::flow::{family_trajectory, ModelFamily};
use riccilab_core::metric::{alexandrov_check, gh_upper_bound, FiniteMetricSpace};
use riccilab_core::numerics::{format_float, linspace};
use riccilab_core::scenario::{
    builtin_scenario, diff_reports, list_builtin_scenarios, parse_config, run_scenario,
    CheckOutcome, ScenarioError,
};

#[derive(Parser)]
#[command(name = "riccilab", version, about = "Curvature-flow scenarios and metric-space tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a config file or a builtin id.
    Run(RunArgs),
    /// List the builtin scenarios.
    List,
    /// Compare the margin columns of two report files.
    Diff(DiffArgs),
    /// Print the trajectory table of a closed-form model family.
    Flow(FlowArgs),
    /// Search an upper bound on the Gromov-Hausdorff distance of two
    /// spaces given as distance-matrix files.
    Gh(GhArgs),
    /// Run the triangle-comparison scan on a distance-matrix file.
    Alexandrov(AlexandrovArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Path to a config file, or the id of a builtin scenario.
    config: String,
    /// Output root; the scenario writes to <out>/<scenario_id>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the configured seed.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct DiffArgs {
    a: PathBuf,
    b: PathBuf,
    /// Largest allowed margin difference.
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
}

#[derive(Args)]
struct FlowArgs {
    /// Family name: round-sphere, product-sphere-circle, flat-torus, cigar.
    family: String,
    /// Time grid as end:steps, e.g. 0.2:40.
    #[arg(long = "t-grid")]
    t_grid: String,
    /// Initial sectional curvature (sphere and product families).
    #[arg(long, default_value_t = 1.0)]
    k0: f64,
    /// Quotient order of the round sphere.
    #[arg(long, default_value_t = 1)]
    quotient: u32,
    /// Circle length of the product family.
    #[arg(long, default_value_t = 1.0)]
    circle_length: f64,
    /// Torus side lengths as a,b,c.
    #[arg(long, default_value = "1,1,1")]
    sides: String,
    /// Cigar soliton scale.
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Cigar truncation radius (defaults to fifty times the scale).
    #[arg(long)]
    truncation: Option<f64>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GhArgs {
    space_a: PathBuf,
    space_b: PathBuf,
    /// Map evaluations to spend per search direction.
    #[arg(long, default_value_t = 2000)]
    budget: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AlexandrovArgs {
    space: PathBuf,
    /// Comparison curvature.
    #[arg(long)]
    k: f64,
    /// Geodesic membership tolerance; defaults to 1e-6 times the diameter.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the violation CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Anything that should terminate with a dedicated exit code.
enum CliError {
    /// Bad config, unreadable input, invalid parameters: exit 2.
    Config(String),
    /// A check or comparison failed: exit 1.
    Failed,
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<riccilab_core::metric::MetricError> for CliError {
    fn from(e: riccilab_core::metric::MetricError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<riccilab_core::flow::FlowError> for CliError {
    fn from(e: riccilab_core::flow::FlowError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::List => cmd_list(),
        Command::Diff(args) => cmd_diff(args),
        Command::Flow(args) => cmd_flow(args),
        Command::Gh(args) => cmd_gh(args),
        Command::Alexandrov(args) => cmd_alexandrov(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn load_config_text(name: &str) -> Result<String, CliError> {
    let path = Path::new(name);
    if path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    if let Some(builtin) = builtin_scenario(name) {
        return Ok(builtin.config.to_string());
    }
    Err(CliError::Config(format!(
        "{name} is neither a config file nor a builtin id; see `riccilab list`"
    )))
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let text = load_config_text(&args.config)?;
    let mut cfg = parse_config(&text)?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(root) = args.out {
        cfg.out_dir = root.join(&cfg.scenario_id);
    }
    let manifest = run_scenario(&cfg)?;
    for v in &manifest.verdicts {
        let margin = v
            .min_margin
            .map(|m| format!(" min margin {}", format_float(m)))
            .unwrap_or_default();
        let note = match &v.outcome {
            CheckOutcome::Error(message) => format!(" ({message})"),
            _ => String::new(),
        };
        println!(
            "check.{} {}: {} expected {}{}{}",
            v.index,
            v.kind.as_str(),
            v.outcome.label(),
            v.expect.as_str(),
            margin,
            note
        );
    }
    println!(
        "scenario {}: {} ({} files in {})",
        manifest.scenario_id,
        if manifest.pass { "pass" } else { "FAIL" },
        manifest.files.len(),
        cfg.out_dir.display()
    );
    if manifest.pass { Ok(()) } else { Err(CliError::Failed) }
}

fn cmd_list() -> Result<(), CliError> {
    for builtin in list_builtin_scenarios() {
        println!("{:<24} {}", builtin.id, builtin.summary);
    }
    Ok(())
}

fn cmd_diff(args: DiffArgs) -> Result<(), CliError> {
    let summary = diff_reports(&args.a, &args.b)?;
    match &summary.worst {
        Some((row, kind)) => println!(
            "{} rows compared, max margin diff {} at row {row} ({kind})",
            summary.rows,
            format_float(summary.max_abs_margin_diff)
        ),
        None => println!("{} rows compared, no margin differences", summary.rows),
    }
    if summary.max_abs_margin_diff <= args.tol { Ok(()) } else { Err(CliError::Failed) }
}

fn parse_t_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let (end, steps) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Config(format!("t-grid {spec:?} is not end:steps")))?;
    let end: f64 = end
        .parse()
        .map_err(|_| CliError::Config(format!("t-grid end {end:?} is not a number")))?;
    let steps: usize = steps
        .parse()
        .map_err(|_| CliError::Config(format!("t-grid steps {steps:?} is not a count")))?;
    if !(end > 0.0 && end.is_finite() && steps >= 1) {
        return Err(CliError::Config(format!("t-grid {spec:?} needs end > 0 and steps >= 1")));
    }
    Ok(linspace(0.0, end, steps))
}

fn cmd_flow(args: FlowArgs) -> Result<(), CliError> {
    let family = match args.family.as_str() {
        "round-sphere" => ModelFamily::round_sphere(args.k0, args.quotient)?,
        "product-sphere-circle" => {
            ModelFamily::product_sphere_circle(args.k0, args.circle_length)?
        }
        "flat-torus" => {
            let parts: Vec<f64> = args
                .sides
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Config(format!("sides {:?} are not numbers", args.sides)))?;
            let [a, b, c] = parts[..] else {
                return Err(CliError::Config("sides must be three comma-separated lengths".into()));
            };
            ModelFamily::flat_torus([a, b, c])?
        }
        "cigar" => match args.truncation {
            Some(radius) => ModelFamily::cigar_truncated(args.scale, radius)?,
            None => ModelFamily::cigar(args.scale)?,
        },
        other => {
            return Err(CliError::Config(format!(
                "unknown family {other}; use round-sphere, product-sphere-circle, flat-torus, or cigar"
            )))
        }
    };
    let grid = parse_t_grid(&args.t_grid)?;
    let tr = family_trajectory(&family, &grid)?;
    let csv = tr.to_csv();
    match args.out {
        Some(path) => std::fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn cmd_gh(args: GhArgs) -> Result<(), CliError> {
    let a = FiniteMetricSpace::read_from_path(&args.space_a)?;
    let b = FiniteMetricSpace::read_from_path(&args.space_b)?;
    if args.budget == 0 {
        return Err(CliError::Config("budget must be positive".into()));
    }
    let (bound, cert) = gh_upper_bound(&a, &b, args.budget, args.seed);
    println!("points = {} {}", a.len(), b.len());
    println!("gh_upper_bound = {}", format_float(bound));
    println!("witness_nu = {}", format_float(cert.nu));
    println!("witness_distortion = {}", format_float(cert.distortion));
    println!("witness_covering = {}", format_float(cert.covering));
    Ok(())
}

fn cmd_alexandrov(args: AlexandrovArgs) -> Result<(), CliError> {
    let space = FiniteMetricSpace::read_from_path(&args.space)?;
    let tol = args.tol.unwrap_or(1e-6 * space.diameter());
    let report = alexandrov_check(&space, args.k, tol)?;
    let mut csv = String::from("check,i,j,k,s,margin\n");
    for v in &report.violations {
        csv.push_str(&format!(
            "alexandrov,{},{},{},{},{}\n",
            v.p,
            v.q,
            v.r,
            v.s,
            format_float(v.margin)
        ));
    }
    match args.out {
        Some(path) => std::fs::write(path, &csv)?,
        None => print!("{csv}"),
    }
    eprintln!(
        "alexandrov k={}: min margin {}, {} quadruples checked, {} triangles skipped, {}",
        format_float(args.k),
        format_float(report.min_margin),
        report.checked,
        report.skipped_triangles,
        if report.pass { "pass" } else { "FAIL" }
    );
    if report.pass { Ok(()) } else { Err(CliError::Failed) }
}
