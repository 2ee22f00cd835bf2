//! Argument parsing and subcommand handlers.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use sparsemoo::metrics::{build_reference_front, purity, Front, FrontRow};
use sparsemoo::problems::{example4, generate_quadratic};
use sparsemoo::rng::stream_id;
use sparsemoo::sfsd::{CrowdingFilter, InitStrategy, SfsdConfig};
use sparsemoo::solvers::Interrupt;

use crate::error::{CliError, CliResult};
use crate::evaluate::{
    compute_metrics, profiles_from_rows, read_metric_rows, write_metric_rows, write_profile, MetricMode,
    MetricRow,
};
use crate::front_io::{read_front, sidecar_path, write_front, write_json};
use crate::instance::{load_instance, Instance, InstanceFile, ProblemKind, QuadraticSpec};
use crate::manifest::{instance_id, ExperimentManifest, Method, SolverSpec};
use crate::pipeline::{deadline, sfsd_front, solve_front, FrontReport, StartOptions};

/// Sizes, sparsity levels, condition numbers and seeds of the quadratic grid.
pub const GRID_SIZES: [(usize, [usize; 3]); 3] = [(10, [2, 5, 8]), (25, [5, 10, 20]), (50, [5, 15, 30])];
pub const GRID_KAPPAS: [f64; 3] = [1.0, 10.0, 100.0];
pub const GRID_SEEDS: [u64; 3] = [0, 1, 2];

#[derive(Debug, Parser)]
#[command(name = "sparsemoo", version, about = "Cardinality-constrained multi-objective optimization")]
pub struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, env = "SPARSEMOO_THREADS", global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a quadratic instance, a preset or the full quadratic grid.
    Generate(GenerateArgs),
    /// Multi-start a single-point solver, refine and filter.
    Solve(SolveArgs),
    /// Phase-one initialization followed by SFSD sweeps.
    Front(FrontArgs),
    /// Purity, spreads and hypervolume of fronts against a reference.
    Metrics(MetricsArgs),
    /// Performance profiles from metric tables.
    Profiles(ProfilesArgs),
    /// Run a full experiment described by a manifest.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Two identity-Hessian quadratics in the plane with s = 1.
    Example4,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    #[arg(long, default_value_t = 2)]
    pub s: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write a fixed instance instead of a random one.
    #[arg(long, conflicts_with = "grid")]
    pub preset: Option<Preset>,
    /// Write all 81 grid instances and a manifest into the --out directory.
    #[arg(long)]
    pub grid: bool,
    /// Output file (directory with --grid).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct StartArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Random starts [default: 2n].
    #[arg(long)]
    pub n_starts: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Iteration cap per solver run.
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    /// Wall-clock limit in seconds (non-deterministic), split evenly between phases.
    #[arg(long)]
    pub wallclock: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// moiht, mospd, mohyb or scalarized.
    #[arg(long, default_value = "mohyb")]
    pub strategy: InitStrategy,
    #[command(flatten)]
    pub common: StartArgs,
}

#[derive(Debug, Args)]
pub struct FrontArgs {
    /// Phase-one strategy: moiht, mospd, mohyb or scalarized.
    #[arg(long, default_value = "mohyb")]
    pub init: InitStrategy,
    /// SFSD sweeps.
    #[arg(long, default_value_t = 20)]
    pub budget: usize,
    /// Exploration filter: off, mean, or a quantile in (0, 1).
    #[arg(long, default_value = "mean", value_parser = parse_crowding)]
    pub crowding: CrowdingFilter,
    /// Entries less crowded than this never explore.
    #[arg(long, default_value_t = 0.05)]
    pub min_crowding: f64,
    #[command(flatten)]
    pub common: StartArgs,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Front CSV as PATH or NAME=PATH; repeat per solver.
    #[arg(long = "front", required = true)]
    pub fronts: Vec<String>,
    /// Problem label written in the table.
    #[arg(long, default_value = "problem")]
    pub problem: String,
    /// Reference front CSV [default: union of the given fronts].
    #[arg(long)]
    pub reference: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MetricMode::Quadratic)]
    pub mode: MetricMode,
    /// Hypervolume reference point "r1,r2" [default: derived from the fronts].
    #[arg(long, value_delimiter = ',')]
    pub ref_point: Option<Vec<f64>>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ProfilesArgs {
    /// Metric table written by `metrics`; repeat to add problems.
    #[arg(long = "table", required = true)]
    pub tables: Vec<PathBuf>,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub manifest: PathBuf,
}

fn parse_crowding(s: &str) -> Result<CrowdingFilter, String> {
    let f = match s {
        "off" => CrowdingFilter::Off,
        "mean" => CrowdingFilter::Mean,
        q => CrowdingFilter::Quantile(q.parse().map_err(|_| format!("expected off, mean or a number, got '{q}'"))?),
    };
    f.validate().map_err(|e| e.to_string())?;
    Ok(f)
}

pub fn run(cli: Cli) -> CliResult<()> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("thread count must be at least 1".into()));
        }
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match cli.command {
        Command::Generate(a) => generate(&a),
        Command::Solve(a) => solve(&a),
        Command::Front(a) => front(&a),
        Command::Metrics(a) => metrics(&a),
        Command::Profiles(a) => profiles(&a),
        Command::Reproduce(a) => reproduce(&a),
    }
}

fn generate(a: &GenerateArgs) -> CliResult<()> {
    if a.grid {
        return generate_grid(&a.out);
    }
    let file = match a.preset {
        Some(Preset::Example4) => InstanceFile::Quadratic(QuadraticSpec::from_problem(&example4(), 1)?),
        None => {
            let inst = generate_quadratic(a.n, a.kappa, a.seed)?;
            sparsemoo::SparseBudget::new(a.s, a.n)?;
            InstanceFile::Quadratic(QuadraticSpec::from_generated(&inst, a.s))
        }
    };
    file.write(&a.out)
}

/// File name of a grid instance, e.g. `quad_n10_k1_s2_seed0.json`.
pub fn grid_file_name(n: usize, kappa: f64, s: usize, seed: u64) -> String {
    format!("quad_n{n}_k{kappa}_s{s}_seed{seed}.json")
}

fn generate_grid(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut names = Vec::new();
    for (n, ss) in GRID_SIZES {
        for kappa in GRID_KAPPAS {
            for seed in GRID_SEEDS {
                let inst = generate_quadratic(n, kappa, seed)?;
                for s in ss {
                    let name = grid_file_name(n, kappa, s, seed);
                    InstanceFile::Quadratic(QuadraticSpec::from_generated(&inst, s)).write(&dir.join(&name))?;
                    names.push(PathBuf::from(name));
                }
            }
        }
    }
    let solver = |name: &str, method: Method| SolverSpec { name: name.into(), method, max_iter: None, wallclock: None };
    let mut solvers: Vec<SolverSpec> = InitStrategy::ALL
        .iter()
        .map(|s| solver(&format!("sfsd-{}", s.name()), Method::Front { init: s.name().into(), budget: 20 }))
        .collect();
    solvers.extend(
        InitStrategy::ALL
            .iter()
            .map(|s| solver(&format!("ms-{}", s.name()), Method::Solve { strategy: s.name().into() })),
    );
    let manifest = ExperimentManifest {
        seed: 0,
        instances: names,
        solvers,
        runs: 5,
        n_starts: None,
        output_dir: PathBuf::from("results"),
        mode: None,
    };
    let path = dir.join("manifest.json");
    write_json(&path, &serde_json::to_value(&manifest).expect("manifest serializes"))?;
    log::info!("wrote {} instances and {}", manifest.instances.len(), path.display());
    Ok(())
}

fn start_options(inst: &Instance, strategy: InitStrategy, c: &StartArgs) -> CliResult<StartOptions> {
    let mut solver = inst.solver_config();
    solver.max_iter = c.max_iter;
    Ok(StartOptions {
        strategy,
        n_starts: c.n_starts,
        seed: c.seed,
        bounds: inst.kind.start_box(),
        solver,
    })
}

fn wallclock_halves(w: Option<f64>) -> CliResult<Option<Duration>> {
    match w {
        None => Ok(None),
        Some(s) if s > 0.0 && s.is_finite() => Ok(Some(Duration::from_secs_f64(s / 2.0))),
        Some(s) => Err(CliError::Usage(format!("--wallclock must be positive, got {s}"))),
    }
}

fn report_meta(command: &str, c: &StartArgs, opts: &StartOptions, inst: &Instance, r: &FrontReport) -> serde_json::Value {
    let sc = &opts.solver;
    json!({
        "command": command,
        "instance": c.instance,
        "problem": inst.kind,
        "n": inst.problem.dim(),
        "s": inst.s.get(),
        "strategy": opts.strategy.name(),
        "seed": opts.seed,
        "n_starts": opts.starts(inst.problem.dim()).ok(),
        "start_box": [opts.bounds.0, opts.bounds.1],
        "solver": {
            "curvature": sc.curvature,
            "eps": sc.eps,
            "max_iter": sc.max_iter,
            "armijo": { "alpha0": sc.armijo.alpha0, "delta": sc.armijo.delta, "gamma": sc.armijo.gamma, "max_backtracks": sc.armijo.max_backtracks },
            "penalty": { "tau0": sc.penalty.tau0, "tau_growth": sc.penalty.tau_growth, "eps0": sc.penalty.eps0, "eps_shrink": sc.penalty.eps_shrink, "xy_tol": sc.penalty.xy_tol, "max_outer": sc.penalty.max_outer, "max_inner": sc.penalty.max_inner },
        },
        "wallclock": c.wallclock,
        "runs": r.runs,
        "converged_runs": r.converged,
        "failed_runs": r.failed,
        "iterations": r.iterations,
        "sweeps": r.sweeps,
        "stop": r.stop.map(|s| format!("{s:?}")),
        "rows": r.rows.len(),
    })
}

fn write_report(out: &Path, meta: serde_json::Value, r: &FrontReport) -> CliResult<()> {
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    write_front(out, &r.rows)?;
    write_json(&sidecar_path(out), &meta)
}

fn solve(a: &SolveArgs) -> CliResult<()> {
    let inst = load_instance(&a.common.instance)?;
    let mut opts = start_options(&inst, a.strategy, &a.common)?;
    if let Some(half) = wallclock_halves(a.common.wallclock)? {
        opts.solver.interrupt = Some(deadline(2 * half));
    }
    let report = solve_front(&*inst.problem, inst.s, &opts)?;
    if report.rows.is_empty() {
        return Err(CliError::Empty("every run failed; no front to write".into()));
    }
    write_report(&a.common.out, report_meta("solve", &a.common, &opts, &inst, &report), &report)
}

pub fn sfsd_config(crowding: CrowdingFilter, min_crowding: f64) -> CliResult<SfsdConfig> {
    if !(min_crowding >= 0.0) {
        return Err(CliError::Usage("--min-crowding must be nonnegative".into()));
    }
    Ok(SfsdConfig { crowding, min_crowding, ..SfsdConfig::default() })
}

fn front(a: &FrontArgs) -> CliResult<()> {
    let inst = load_instance(&a.common.instance)?;
    let mut opts = start_options(&inst, a.init, &a.common)?;
    let mut sfsd = sfsd_config(a.crowding, a.min_crowding)?;
    let half = wallclock_halves(a.common.wallclock)?;
    if let Some(h) = half {
        opts.solver.interrupt = Some(deadline(h));
    }
    let report = run_front(&inst, &opts, &mut sfsd, a.budget, half)?;
    let mut meta = report_meta("front", &a.common, &opts, &inst, &report);
    meta["sfsd"] = json!({
        "budget": a.budget,
        "crowding": format!("{:?}", a.crowding),
        "min_crowding": a.min_crowding,
        "theta_tol": sfsd.theta_tol,
        "final_descent": sfsd.final_descent,
    });
    write_report(&a.common.out, meta, &report)
}

/// Phase one, then phase two with its own half of the wall-clock budget.
fn run_front(
    inst: &Instance,
    opts: &StartOptions,
    sfsd: &mut SfsdConfig,
    budget: usize,
    half: Option<Duration>,
) -> CliResult<FrontReport> {
    if let Some(h) = half {
        // Armed on first poll, i.e. when phase two starts.
        let end = OnceLock::new();
        sfsd.interrupt = Some(Interrupt::new(move || {
            Instant::now() >= *end.get_or_init(|| Instant::now() + h)
        }));
    }
    sfsd_front(&*inst.problem, inst.s, opts, sfsd, budget)
}

fn parse_named(spec: &str) -> (String, PathBuf) {
    match spec.split_once('=') {
        Some((name, path)) if !name.is_empty() => (name.to_string(), PathBuf::from(path)),
        _ => {
            let p = PathBuf::from(spec);
            (instance_id(&p), p)
        }
    }
}

fn metrics(a: &MetricsArgs) -> CliResult<()> {
    let mut fronts = Vec::new();
    for spec in &a.fronts {
        let (name, path) = parse_named(spec);
        if fronts.iter().any(|(n, _)| *n == name) {
            return Err(CliError::Usage(format!("front name '{name}' given twice")));
        }
        fronts.push((name, read_front(&path)?));
    }
    let reference = a.reference.as_deref().map(read_front).transpose()?;
    let report = compute_metrics(&a.problem, &fronts, reference, a.mode, a.ref_point.clone())?;
    write_metric_rows(&a.out, &report.rows)?;
    write_json(
        &sidecar_path(&a.out),
        &json!({
            "problem": a.problem,
            "mode": a.mode,
            "reference": a.reference.as_ref().map_or_else(|| json!("union of the given fronts"), |p| json!(p)),
            "reference_size": report.reference_size,
            "ref_point": report.ref_point,
            "ref_point_rule": if a.ref_point.is_some() { "given" } else { "per objective: max + 0.1 * max(|max|, max - min) over all fronts" },
        }),
    )
}

fn write_profiles(dir: &Path, rows: &[MetricRow]) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for (metric, names, curves) in profiles_from_rows(rows)? {
        write_profile(&dir.join(format!("profile_{}.csv", metric.name())), &names, &curves)?;
    }
    Ok(())
}

fn profiles(a: &ProfilesArgs) -> CliResult<()> {
    let mut rows = Vec::new();
    for t in &a.tables {
        rows.extend(read_metric_rows(t)?);
    }
    write_profiles(&a.out_dir, &rows)
}

struct Task<'a> {
    instance: usize,
    solver: &'a SolverSpec,
    run: usize,
}

fn reproduce(a: &ReproduceArgs) -> CliResult<()> {
    let base = a.manifest.parent().unwrap_or(Path::new(".")).to_path_buf();
    let manifest = ExperimentManifest::read(&a.manifest)?;
    manifest.validate(&base)?;
    let out = base.join(&manifest.output_dir);
    let instances: Vec<(String, Instance)> = manifest
        .instances
        .iter()
        .map(|p| Ok((instance_id(p), load_instance(&base.join(p))?)))
        .collect::<CliResult<_>>()?;
    let tasks: Vec<Task> = (0..instances.len())
        .flat_map(|i| {
            manifest
                .solvers
                .iter()
                .flat_map(move |s| (0..manifest.runs).map(move |run| Task { instance: i, solver: s, run }))
        })
        .collect();
    let fronts: Vec<Front> = tasks
        .par_iter()
        .map(|t| {
            let (id, inst) = &instances[t.instance];
            let seed = stream_id(&[&manifest.seed.to_string(), id, &t.solver.name, &t.run.to_string()]);
            let report = run_task(inst, t.solver, seed, manifest.n_starts)?;
            let path = out.join("fronts").join(id).join(format!("{}_run{}.csv", t.solver.name, t.run));
            let meta = json!({ "instance": id, "solver": t.solver, "run": t.run, "seed": seed, "rows": report.rows.len(), "runs": report.runs, "failed_runs": report.failed, "sweeps": report.sweeps });
            write_report(&path, meta, &report)?;
            let rows = report
                .rows
                .into_iter()
                .map(|e| FrontRow { f: e.f, x: Some(e.x), support: Some(e.support) })
                .collect();
            Ok(Front::new(rows)?)
        })
        .collect::<CliResult<_>>()?;
    let k = manifest.solvers.len() * manifest.runs;
    let mut best_rows = Vec::new();
    let mut worst_rows = Vec::new();
    let mut summary = Vec::new();
    for (i, (id, inst)) in instances.iter().enumerate() {
        let mine = &fronts[i * k..(i + 1) * k];
        let reference = build_reference_front(mine)?;
        if reference.is_empty() {
            return Err(CliError::Empty(format!("{id}: every run returned an empty front")));
        }
        let mode = manifest.mode.unwrap_or(match inst.kind {
            ProblemKind::Quadratic => MetricMode::Quadratic,
            ProblemKind::Logistic => MetricMode::Logistic,
        });
        let mut best = Vec::new();
        let mut worst = Vec::new();
        let mut picks = Vec::new();
        for (j, solver) in manifest.solvers.iter().enumerate() {
            let runs = &mine[j * manifest.runs..(j + 1) * manifest.runs];
            let pur: Vec<f64> = runs.iter().map(|f| purity(f, &reference)).collect::<Result<_, _>>()?;
            // First run wins ties in both directions.
            let b = (0..pur.len()).fold(0, |b, r| if pur[r] > pur[b] { r } else { b });
            let w = (0..pur.len()).fold(0, |w, r| if pur[r] < pur[w] { r } else { w });
            best.push((solver.name.clone(), runs[b].clone()));
            worst.push((solver.name.clone(), runs[w].clone()));
            picks.push(json!({ "solver": solver.name, "purity": pur, "best_run": b, "worst_run": w }));
        }
        let rb = compute_metrics(id, &best, Some(reference.clone()), mode, None)?;
        let rw = compute_metrics(id, &worst, Some(reference.clone()), mode, None)?;
        summary.push(json!({
            "instance": id,
            "mode": mode,
            "reference_size": reference.len(),
            "ref_point_best": rb.ref_point,
            "ref_point_worst": rw.ref_point,
            "runs": picks,
        }));
        best_rows.extend(rb.rows);
        worst_rows.extend(rw.rows);
    }
    write_metric_rows(&out.join("metrics_best.csv"), &best_rows)?;
    write_metric_rows(&out.join("metrics_worst.csv"), &worst_rows)?;
    write_profiles(&out.join("profiles_best"), &best_rows)?;
    write_profiles(&out.join("profiles_worst"), &worst_rows)?;
    write_json(
        &out.join("reproduce.json"),
        &json!({
            "manifest": manifest,
            "reference_front": "union of every run of every solver on the instance",
            "reference_sparse": true,
            "reference_note": format!(
                "built from {} solvers x {} runs; a reference assembled from more variants and seeds would be denser, so purity values are optimistic",
                manifest.solvers.len(), manifest.runs
            ),
            "instances": summary,
        }),
    )
}

fn run_task(inst: &Instance, spec: &SolverSpec, seed: u64, n_starts: Option<usize>) -> CliResult<FrontReport> {
    let mut solver = inst.solver_config();
    if let Some(m) = spec.max_iter {
        solver.max_iter = m;
    }
    let half = wallclock_halves(spec.wallclock)?;
    let mut opts = StartOptions {
        strategy: spec.method.strategy()?,
        n_starts,
        seed,
        bounds: inst.kind.start_box(),
        solver,
    };
    match spec.method {
        Method::Solve { .. } => {
            if let Some(h) = half {
                opts.solver.interrupt = Some(deadline(2 * h));
            }
            solve_front(&*inst.problem, inst.s, &opts)
        }
        Method::Front { budget, .. } => {
            if let Some(h) = half {
                opts.solver.interrupt = Some(deadline(h));
            }
            run_front(inst, &opts, &mut SfsdConfig::default(), budget, half)
        }
    }
}
