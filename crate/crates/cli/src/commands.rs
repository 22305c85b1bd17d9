//! The `run`, `plan` and `validate` subcommands.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use absim_core::sim::{prepare_route, simulate, Outcome, Scenario, SimError};

use crate::output::{metrics_json, route_geojson, trajectory_csv, write_atomic};
use crate::render::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SCENARIO: i32 = 1;
pub const EXIT_PLAN: i32 = 2;
pub const EXIT_FAULT: i32 = 3;

pub const TRAJECTORY_FILE: &str = "trajectory.csv";
pub const METRICS_FILE: &str = "metrics.json";
pub const ROUTE_FILE: &str = "route.geojson";
pub const RENDER_FILE: &str = "render.svg";

/// A failed command with its exit code and a diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        let code = match e {
            SimError::Plan(_) => EXIT_PLAN,
            SimError::Config(_) | SimError::Chart(_) => EXIT_SCENARIO,
        };
        Failure::new(code, e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_SCENARIO, format!("cannot write {}: {e}", path.display()))
}

/// Paths of the files produced by one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutputs {
    pub trajectory: PathBuf,
    pub metrics: PathBuf,
    pub route: PathBuf,
    pub render: Option<PathBuf>,
}

impl RunOutputs {
    pub fn in_dir(dir: &Path, render: bool) -> Self {
        RunOutputs {
            trajectory: dir.join(TRAJECTORY_FILE),
            metrics: dir.join(METRICS_FILE),
            route: dir.join(ROUTE_FILE),
            render: render.then(|| dir.join(RENDER_FILE)),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub outcome: Outcome,
    pub steps: usize,
    pub outputs: RunOutputs,
    pub line: String,
}

/// Runs one scenario and writes its outputs into `dir`. A model fault still
/// writes the partial outputs before reporting exit code 3.
pub fn run_one(path: &Path, dir: &Path, render: bool) -> Result<RunSummary, Failure> {
    let scn = Scenario::load(path)?;
    let (chart, route) = prepare_route(&scn)?;
    let (log, metrics) = simulate(&scn, &route)?;
    let outputs = RunOutputs::in_dir(dir, render);

    let write = |p: &Path, bytes: &[u8]| write_atomic(p, bytes).map_err(|e| io_failure(p, e));
    write(&outputs.trajectory, trajectory_csv(&log).as_bytes())?;
    let doc = metrics_json(metrics.as_ref(), log.outcome, log.fault.as_deref());
    write(&outputs.metrics, format!("{:#}\n", doc).as_bytes())?;
    let geo = route_geojson(&route, chart.as_ref().map(|c| &c.projection));
    write(&outputs.route, format!("{:#}\n", geo).as_bytes())?;
    if let Some(p) = &outputs.render {
        write(p, render_svg(chart.as_ref(), &route, &log).as_bytes())?;
    }

    let name = scn.config.name.clone().unwrap_or_else(|| path.display().to_string());
    let mut line = format!("{name}: {} after {} steps", log.outcome.as_str(), log.records.len());
    if let Some(m) = &metrics {
        line.push_str(&format!(", D_actual {:.1} m, T_actual {:.1} s, CXTE {:.1} m·s", m.d_actual, m.t_actual, m.cxte));
    }
    line.push_str(&format!(" -> {}", dir.display()));
    if log.outcome == Outcome::Fault {
        let reason = log.fault.as_deref().unwrap_or("unknown");
        return Err(Failure::new(EXIT_FAULT, format!("{line}\nmodel fault: {reason}")));
    }
    Ok(RunSummary { outcome: log.outcome, steps: log.records.len(), outputs, line })
}

fn stem(path: &Path, index: usize) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| format!("scenario{index}"))
}

/// Output directory per scenario: `out` itself for a single scenario,
/// `out/<file stem>` in batch mode.
pub fn output_dirs(scenarios: &[PathBuf], out: &Path) -> Vec<PathBuf> {
    if scenarios.len() == 1 {
        return vec![out.to_path_buf()];
    }
    scenarios.iter().enumerate().map(|(i, p)| out.join(stem(p, i))).collect()
}

/// Runs every scenario, up to `jobs` at a time, and returns the largest exit
/// code encountered.
pub fn run(scenarios: &[PathBuf], out: &Path, render: bool, quiet: bool, jobs: usize) -> i32 {
    let dirs = output_dirs(scenarios, out);
    let results: Mutex<Vec<Option<Result<RunSummary, Failure>>>> =
        Mutex::new((0..scenarios.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = jobs.clamp(1, scenarios.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= scenarios.len() {
                    break;
                }
                log::info!("running {}", scenarios[i].display());
                let r = run_one(&scenarios[i], &dirs[i], render);
                results.lock().expect("result lock")[i] = Some(r);
            });
        }
    });

    let mut code = EXIT_OK;
    for (path, r) in scenarios.iter().zip(results.into_inner().expect("result lock")) {
        match r.expect("every scenario ran") {
            Ok(summary) => {
                if !quiet {
                    println!("{}", summary.line);
                }
            }
            Err(f) => {
                eprintln!("error: {}: {}", path.display(), f.message);
                code = code.max(f.code);
            }
        }
    }
    code
}

/// Plans the route only and writes it as GeoJSON. Nothing is written when
/// planning fails.
pub fn plan(scenario: &Path, out: &Path) -> Result<(), Failure> {
    let scn = Scenario::load(scenario)?;
    let (chart, route) = prepare_route(&scn)?;
    let geo = route_geojson(&route, chart.as_ref().map(|c| &c.projection));
    write_atomic(out, format!("{:#}\n", geo).as_bytes()).map_err(|e| io_failure(out, e))
}

/// Loads and checks each scenario without running it.
pub fn validate(scenarios: &[PathBuf], quiet: bool) -> i32 {
    let mut code = EXIT_OK;
    for path in scenarios {
        match Scenario::load(path) {
            Ok(_) => {
                if !quiet {
                    println!("ok: {}", path.display());
                }
            }
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                code = EXIT_SCENARIO;
            }
        }
    }
    code
}
