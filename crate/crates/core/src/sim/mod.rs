//! Scenario configuration and the closed-loop simulation engine.
//!
//! Each step runs guidance, collision avoidance, the heading reference, the
//! rudder controller and servo, then integrates the vessel model and moves
//! the target vessels.

mod config;
pub mod presets;
mod speed;
mod targets;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use config::{
    ChartSource, ColavConfig, InlineShip, PlannerSettings, RouteSpec, Scenario, ScenarioConfig, ShipSpec, SimSettings,
    TargetConfig, TargetMotion, DEFAULT_BARGE, SCHEMA_VERSION,
};
pub use speed::{steady_speed, SpeedTable};
pub use targets::{step_targets, Target};

use crate::actuators::rudder_servo;
use crate::chart::{
    build_chart_memory, clean_waterway_axes, load_chart_json, load_shapefile_dir, ChartError, ChartFeatureSet,
    ClassRegistry,
};
use crate::colav::{run_sbmpc, ColavDecision, ObstacleState};
use crate::control::{ControlState, Controller};
use crate::geometry::{wrap_pi, Point};
use crate::guidance::{compute_los_ref, path_azimuth, update_active_waypoint, HeadingReference, TrackState};
use crate::metrics::{compute_report, MetricsReport};
use crate::model::{ForceSet, VesselState};
use crate::planner::{
    assign_depths, build_graph, connect_components, depth_at, plan_path, refine_path, PlanError, PlannedRoute,
};

#[derive(Debug, Error)]
pub enum SimError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Chart(#[from] ChartError),
    #[error(transparent)]
    Plan(#[from] PlanError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Reached,
    MaxSteps,
    Fault,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Reached => "reached",
            Outcome::MaxSteps => "max_steps",
            Outcome::Fault => "fault",
        }
    }
}

/// Everything recorded for one executed step. The state is the one at the
/// start of the step, from which every other field was computed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogRecord {
    pub t: f64,
    pub state: VesselState,
    pub chi_d: f64,
    pub decision: ColavDecision,
    pub psi_d: f64,
    pub r_d: f64,
    pub delta_c: f64,
    pub delta: f64,
    pub forces: ForceSet,
    pub targets: Vec<ObstacleState>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimLog {
    pub dt: f64,
    pub records: Vec<LogRecord>,
    pub outcome: Outcome,
    /// Reason for a `fault` outcome.
    pub fault: Option<String>,
}

impl SimLog {
    pub fn positions(&self) -> Vec<Point> {
        self.records.iter().map(|r| r.state.position()).collect()
    }

    pub fn target_count(&self) -> usize {
        self.records.first().map_or(0, |r| r.targets.len())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    pub log: SimLog,
    /// `None` when the log is too short to evaluate.
    pub metrics: Option<MetricsReport>,
    pub route: PlannedRoute,
    pub chart: Option<ChartFeatureSet>,
}

pub fn load_chart(source: &ChartSource) -> Result<ChartFeatureSet, SimError> {
    let (features, projection) = match source {
        ChartSource::Json(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ChartError::Io { path: path.display().to_string(), source: e })?;
            load_chart_json(&text)?
        }
        ChartSource::ShapefileDir(dir) => load_shapefile_dir(dir)?,
    };
    Ok(build_chart_memory(features, &ClassRegistry::default(), projection)?)
}

/// Plans a refined route on the chart between two local points.
pub fn plan_on_chart(
    chart: &ChartFeatureSet,
    start: Point,
    goal: Point,
    min_depth: f64,
    settings: &PlannerSettings,
) -> Result<PlannedRoute, PlanError> {
    let lines = chart.layer("wtwaxs").map(|l| l.lines.as_slice()).unwrap_or(&[]);
    let segments = clean_waterway_axes(lines, settings.axis_epsilon);
    let graph = connect_components(build_graph(&segments, settings.merge_tol)?);
    let graph = assign_depths(graph, chart.depare());
    let route = plan_path(&graph, start, goal, min_depth)?;
    Ok(refine_path(&route, settings.dup_tol, settings.window))
}

/// Loads the chart (if any) and produces the route the vessel will follow.
pub fn prepare_route(scn: &Scenario) -> Result<(Option<ChartFeatureSet>, PlannedRoute), SimError> {
    let chart = scn.chart_path().map(|c| load_chart(&c)).transpose()?;
    let route = match &scn.config.route {
        RouteSpec::Plan { start, goal, min_depth } => {
            let chart = chart.as_ref().ok_or_else(|| SimError::Config("a planned route needs a chart".into()))?;
            let (a, b) = (chart.projection.forward(*start), chart.projection.forward(*goal));
            plan_on_chart(chart, a, b, *min_depth, &scn.config.planner)?
        }
        RouteSpec::Waypoints { points } => {
            let depths = points
                .iter()
                .map(|p| match &chart {
                    Some(c) => depth_at(*p, &Default::default(), c.depare()),
                    None => scn.config.sim.water_depth.unwrap_or(0.0),
                })
                .collect();
            PlannedRoute { path_points: points.clone(), path_depths: depths }
        }
    };
    if route.path_points.len() < 2 {
        return Err(SimError::Config("route has fewer than two distinct points".into()));
    }
    Ok((chart, route))
}

/// Runs the closed loop along `route`. Model faults end the run with outcome
/// `fault` and keep the partial log.
pub fn simulate(scn: &Scenario, route: &PlannedRoute) -> Result<(SimLog, Option<MetricsReport>), SimError> {
    let cfg = &scn.config;
    let model = scn.vessel_model()?;
    let wps = &route.path_points;
    let los = &cfg.guidance;
    let dt = cfg.sim.dt;
    let table = SpeedTable::build(&model, (3.0 * model.propeller.rps).max(1.0));

    let mut s = cfg.sim.initial_state.unwrap_or_else(|| VesselState {
        x: wps[0].x,
        y: wps[0].y,
        psi: path_azimuth(wps[0], wps[1]),
        u: los.speed_at(1),
        ..Default::default()
    });
    let mut track = TrackState::default();
    let mut heading_ref = HeadingReference::default();
    let mut controller = Controller::new(&cfg.controller);
    let mut targets: Vec<Target> = cfg.colav.targets.iter().map(Target::new).collect();
    let mut prev = ColavDecision::default();
    let mut delta = 0.0;
    let delta_max = model.rudder.delta_max;
    let goal = *wps.last().unwrap();

    let mut records = Vec::new();
    let mut outcome = Outcome::MaxSteps;
    let mut fault = None;
    let mut warned_speed = false;

    for k in 0..cfg.sim.max_steps {
        track = update_active_waypoint(s.position(), wps, track, los);
        let (chi_d, u_d) = compute_los_ref(&s, wps, track, los);
        let obstacles: Vec<ObstacleState> = targets.iter().map(|t| t.state).collect();
        let decision = if cfg.colav.enabled {
            run_sbmpc(&s, chi_d, u_d, &prev, &obstacles, &cfg.colav.params)
        } else {
            ColavDecision::default()
        };
        prev = decision;
        let chi_cmd = wrap_pi(chi_d + decision.chi_m);
        let u_cmd = u_d * decision.u_m;
        let (psi_d, r_d) = heading_ref.step(chi_cmd, dt);
        let delta_c = match controller.step(
            ControlState { r: s.r, psi: s.psi },
            ControlState { r: r_d, psi: psi_d },
            delta_max,
        ) {
            Ok(d) => d,
            Err(e) => {
                outcome = Outcome::Fault;
                fault = Some(e.to_string());
                break;
            }
        };
        delta = rudder_servo(delta, delta_c, dt, &model.rudder);
        if u_cmd > table.max_speed() && !warned_speed {
            log::warn!("commanded speed {u_cmd:.3} m/s exceeds the attainable {:.3} m/s", table.max_speed());
            warned_speed = true;
        }
        let rps = table.rps_for(u_cmd);
        let forces = match model.forces(&s, delta, rps) {
            Ok(f) => f,
            Err(e) => {
                outcome = Outcome::Fault;
                fault = Some(e.to_string());
                break;
            }
        };
        records.push(LogRecord {
            t: k as f64 * dt,
            state: s,
            chi_d,
            decision,
            psi_d,
            r_d,
            delta_c,
            delta,
            forces,
            targets: obstacles,
        });
        match model.step(&s, delta, rps, dt) {
            Ok(next) => s = next,
            Err(e) => {
                outcome = Outcome::Fault;
                fault = Some(e.to_string());
                break;
            }
        }
        step_targets(&mut targets, dt);
        if s.position().dist(goal) < los.r_a {
            outcome = Outcome::Reached;
            break;
        }
    }

    let log = SimLog { dt, records, outcome, fault };
    let v_ref = cfg.sim.v_ref.unwrap_or_else(|| los.speed_at(1));
    let psi: Vec<f64> = log.records.iter().map(|r| r.state.psi).collect();
    let psi_d: Vec<f64> = log.records.iter().map(|r| r.psi_d).collect();
    let metrics = match compute_report(wps, v_ref, &log.positions(), &psi, &psi_d, dt) {
        Ok(m) => Some(m),
        Err(e) => {
            log::warn!("metrics unavailable: {e}");
            None
        }
    };
    Ok((log, metrics))
}

/// Loads, plans and simulates a scenario.
pub fn run_scenario(scn: &Scenario) -> Result<SimResult, SimError> {
    let (chart, route) = prepare_route(scn)?;
    let (log, metrics) = simulate(scn, &route)?;
    Ok(SimResult { log, metrics, route, chart })
}
