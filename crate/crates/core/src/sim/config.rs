use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

use super::presets;
use super::SimError;
use crate::actuators::{PropellerParams, RudderParams};
use crate::colav::{ObstacleState, SbmpcParams};
use crate::control::ControllerConfig;
use crate::geometry::Point;
use crate::guidance::LosParams;
use crate::model::{Current, HullDerivatives, ShallowWaterTable, ShipParams, VesselModel, VesselState};
use crate::planner::{DEFAULT_DUP_TOL, DEFAULT_MERGE_TOL, DEFAULT_SMOOTH_WINDOW};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub version: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub chart: Option<ChartSource>,
    pub route: RouteSpec,
    #[serde(default)]
    pub planner: PlannerSettings,
    pub ship: ShipSpec,
    pub guidance: LosParams,
    pub controller: ControllerConfig,
    #[serde(default)]
    pub colav: ColavConfig,
    pub sim: SimSettings,
}

/// Where the chart comes from. Paths are relative to the scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ChartSource {
    Json(PathBuf),
    ShapefileDir(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RouteSpec {
    /// Plan on the chart between two `[lon, lat]` positions.
    Plan { start: Point, goal: Point, min_depth: f64 },
    /// Explicit waypoints in local metres.
    Waypoints { points: Vec<Point> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PlannerSettings {
    /// Vertices of a waterway axis closer than this are merged, m.
    pub axis_epsilon: f64,
    pub merge_tol: f64,
    pub dup_tol: f64,
    pub window: usize,
}

impl Default for PlannerSettings {
    fn default() -> Self {
        PlannerSettings {
            axis_epsilon: 0.1,
            merge_tol: DEFAULT_MERGE_TOL,
            dup_tol: DEFAULT_DUP_TOL,
            window: DEFAULT_SMOOTH_WINDOW,
        }
    }
}

/// Ship description: a bundled preset or a full inline parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShipSpec {
    Preset { preset: String },
    Inline(Box<InlineShip>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineShip {
    pub params: ShipParams,
    pub hull: HullDerivatives,
    pub propeller: PropellerParams,
    pub rudder: RudderParams,
    /// When present together with `sim.water_depth`, `params.r0_prime` is
    /// read as the deep-water value and scaled by this table.
    #[serde(default)]
    pub shallow_water: Option<ShallowWaterTable>,
}

pub const DEFAULT_BARGE: &str = "default_barge";

impl ShipSpec {
    pub fn resolve(&self) -> Result<InlineShip, SimError> {
        match self {
            ShipSpec::Preset { preset } if preset == DEFAULT_BARGE => Ok(InlineShip {
                params: presets::default_ship_params(),
                hull: presets::default_hull_derivatives(),
                propeller: presets::default_propeller(),
                rudder: presets::default_rudder(),
                shallow_water: Some(presets::default_shallow_water()),
            }),
            ShipSpec::Preset { preset } => Err(SimError::Config(format!("unknown ship preset '{preset}'"))),
            ShipSpec::Inline(s) => Ok((**s).clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ColavConfig {
    pub enabled: bool,
    pub params: SbmpcParams,
    pub targets: Vec<TargetConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetConfig {
    pub initial: ObstacleState,
    #[serde(default)]
    pub motion: TargetMotion,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetMotion {
    #[default]
    ConstantVelocity,
    /// Kinematic LOS tracking of a waypoint list in local metres.
    Waypoints { points: Vec<Point>, d_los: f64, r_a: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSettings {
    /// Integration and control step, s.
    pub dt: f64,
    pub max_steps: usize,
    /// Reference speed for the nominal time, m/s. Defaults to the first
    /// nominal guidance speed.
    #[serde(default)]
    pub v_ref: Option<f64>,
    #[serde(default)]
    pub current: Current,
    /// Water depth for the shallow-water resistance correction, m.
    #[serde(default)]
    pub water_depth: Option<f64>,
    /// Reserved; the pipeline is deterministic.
    #[serde(default)]
    pub seed: Option<u64>,
    /// Initial own-ship state. Defaults to the first waypoint, heading for
    /// the second at the first nominal speed.
    #[serde(default)]
    pub initial_state: Option<VesselState>,
}

/// A scenario file together with the directory relative paths resolve from.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: ScenarioConfig,
    pub base_dir: PathBuf,
}

impl Scenario {
    pub fn from_json(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self, SimError> {
        let config: ScenarioConfig =
            serde_json::from_str(text).map_err(|e| SimError::Config(format!("invalid scenario: {e}")))?;
        let scenario = Scenario { config, base_dir: base_dir.into() };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, SimError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SimError::Config(format!("cannot read {}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_json(&text, base)
    }

    pub fn chart_path(&self) -> Option<ChartSource> {
        self.config.chart.as_ref().map(|c| match c {
            ChartSource::Json(p) => ChartSource::Json(self.base_dir.join(p)),
            ChartSource::ShapefileDir(p) => ChartSource::ShapefileDir(self.base_dir.join(p)),
        })
    }

    /// Checks every invariant that can be verified without loading the chart.
    pub fn validate(&self) -> Result<(), SimError> {
        let c = &self.config;
        let bad = |m: String| Err(SimError::Config(m));
        if c.version != SCHEMA_VERSION {
            return bad(format!("unsupported scenario version {} (expected {SCHEMA_VERSION})", c.version));
        }
        if !(c.sim.dt > 0.0 && c.sim.dt.is_finite()) {
            return bad("sim.dt must be positive".into());
        }
        if c.sim.max_steps == 0 {
            return bad("sim.max_steps must be at least 1".into());
        }
        if let Some(v) = c.sim.v_ref {
            if !(v > 0.0) {
                return bad("sim.v_ref must be positive".into());
            }
        }
        if let Some(h) = c.sim.water_depth {
            if !(h > 0.0) {
                return bad("sim.water_depth must be positive".into());
            }
        }
        let waypoint_count = match &c.route {
            RouteSpec::Plan { min_depth, .. } => {
                if c.chart.is_none() {
                    return bad("a planned route needs a chart".into());
                }
                if !(*min_depth >= 0.0) {
                    return bad("route.min_depth must be non-negative".into());
                }
                None
            }
            RouteSpec::Waypoints { points } => {
                if points.len() < 2 {
                    return bad("route needs at least two waypoints".into());
                }
                if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
                    return bad("waypoints must be finite".into());
                }
                Some(points.len())
            }
        };
        match waypoint_count {
            Some(n) => c.guidance.validate(n),
            // planned routes have an unknown waypoint count: only one global speed makes sense
            None => c.guidance.validate(1),
        }
        .map_err(|e| SimError::Config(format!("guidance: {e}")))?;
        let ship = c.ship.resolve()?;
        ship.params.validate().map_err(|e| SimError::Config(format!("ship: {e}")))?;
        ship.propeller.validate().map_err(|e| SimError::Config(format!("propeller: {e}")))?;
        ship.rudder.validate().map_err(|e| SimError::Config(format!("rudder: {e}")))?;
        if let Some(t) = &ship.shallow_water {
            t.validate().map_err(|e| SimError::Config(format!("shallow_water: {e}")))?;
        }
        if ship.hull.as_array().iter().any(|v| !v.is_finite()) {
            return bad("hull derivatives must be finite".into());
        }
        match &c.controller {
            ControllerConfig::Pid(g) => g.validate(),
            ControllerConfig::Mpc(p) => p.validate(),
        }
        .map_err(|e| SimError::Config(format!("controller: {e}")))?;
        if c.colav.enabled {
            c.colav.params.validate().map_err(|e| SimError::Config(format!("colav: {e}")))?;
        }
        for (i, t) in c.colav.targets.iter().enumerate() {
            let o = &t.initial;
            if ![o.x, o.y, o.course, o.speed].iter().all(|v| v.is_finite()) || o.speed < 0.0 {
                return bad(format!("target {i}: state must be finite with non-negative speed"));
            }
            if let TargetMotion::Waypoints { points, d_los, r_a } = &t.motion {
                if points.len() < 2 || !(*d_los > 0.0) || !(*r_a > 0.0) {
                    return bad(format!("target {i}: waypoint motion needs ≥ 2 points and positive d_los, r_a"));
                }
            }
        }
        Ok(())
    }

    /// Vessel model with the shallow-water correction and current applied.
    pub fn vessel_model(&self) -> Result<VesselModel, SimError> {
        let ship = self.config.ship.resolve()?;
        let mut params = ship.params;
        if let (Some(table), Some(h)) = (&ship.shallow_water, self.config.sim.water_depth) {
            params.r0_prime *= table.multiplier(h / params.draught);
        }
        Ok(VesselModel {
            ship: params,
            hull: ship.hull,
            propeller: ship.propeller,
            rudder: ship.rudder,
            current: self.config.sim.current,
        })
    }
}
