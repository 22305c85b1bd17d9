//! Scenario-based MPC collision avoidance.
//!
//! Every combination of a course offset and a speed multiplier is simulated
//! with a first-order kinematic model of the own ship and scored against
//! constant-velocity predictions of the obstacles. Angles follow the
//! counter-clockwise convention of the rest of the crate, so a turn to
//! starboard is a negative course offset.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::geometry::wrap_pi;
use crate::model::VesselState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SbmpcTuning {
    pub q_col: f64,
    pub d_safe: f64,
    pub d_close: f64,
    pub kappa_colregs: f64,
    /// Weight on port (positive) course offsets.
    pub k_chi_p: f64,
    /// Weight on starboard (negative) course offsets.
    pub k_chi_s: f64,
    pub k_du: f64,
    pub k_dchi: f64,
    /// Speed normalising the relative-velocity factor, m/s.
    pub u_ref: f64,
}

impl Default for SbmpcTuning {
    fn default() -> Self {
        SbmpcTuning {
            q_col: 4.0,
            d_safe: 50.0,
            d_close: 200.0,
            kappa_colregs: 3.0,
            k_chi_p: 1.6,
            k_chi_s: 1.3,
            k_du: 0.5,
            k_dchi: 0.2,
            u_ref: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SbmpcParams {
    /// Prediction horizon, s.
    pub t: f64,
    /// Prediction sample time, s.
    pub dt: f64,
    pub t_chi: f64,
    pub t_u: f64,
    /// Candidate course offsets, rad.
    pub chi_offsets: Vec<f64>,
    pub u_mults: Vec<f64>,
    pub tuning: SbmpcTuning,
}

impl Default for SbmpcParams {
    fn default() -> Self {
        let mut chi_offsets = vec![0.0];
        for deg in (15..=90).step_by(15) {
            let a = (deg as f64).to_radians();
            chi_offsets.extend([-a, a]);
        }
        SbmpcParams {
            t: 120.0,
            dt: 2.0,
            t_chi: 10.0,
            t_u: 20.0,
            chi_offsets,
            u_mults: vec![1.0, 0.5, 0.0],
            tuning: SbmpcTuning::default(),
        }
    }
}

impl SbmpcParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.dt > 0.0 && self.t > self.dt) {
            return Err("SBMPC requires t > dt > 0".into());
        }
        if !(self.t_chi > 0.0 && self.t_u > 0.0) {
            return Err("SBMPC time constants must be positive".into());
        }
        if !self.chi_offsets.contains(&0.0) {
            return Err("chi_offsets must contain 0".into());
        }
        if !self.u_mults.contains(&1.0) {
            return Err("u_mults must contain 1.0".into());
        }
        let t = &self.tuning;
        if !(t.d_safe > 0.0 && t.d_safe < t.d_close) {
            return Err("SBMPC requires 0 < d_safe < d_close".into());
        }
        if !(t.u_ref > 0.0) {
            return Err("u_ref must be positive".into());
        }
        let weights = [t.q_col, t.kappa_colregs, t.k_chi_p, t.k_chi_s, t.k_du, t.k_dchi];
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err("SBMPC weights must be finite and non-negative".into());
        }
        Ok(())
    }

    /// Number of samples in a predicted trajectory.
    pub fn samples(&self) -> usize {
        (self.t / self.dt + 1e-9).floor() as usize + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObstacleState {
    pub x: f64,
    pub y: f64,
    pub course: f64,
    pub speed: f64,
    #[serde(default)]
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColavDecision {
    pub chi_m: f64,
    pub u_m: f64,
}

impl Default for ColavDecision {
    fn default() -> Self {
        ColavDecision { chi_m: 0.0, u_m: 1.0 }
    }
}

/// One sample of a predicted trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackSample {
    pub x: f64,
    pub y: f64,
    pub chi: f64,
    pub speed: f64,
}

impl TrackSample {
    fn velocity(&self) -> (f64, f64) {
        (self.speed * self.chi.cos(), self.speed * self.chi.sin())
    }
}

/// Kinematic own-ship prediction with first-order course and speed response,
/// integrated by forward Euler at `p.dt`.
pub fn predict_ownship(s: &VesselState, chi_cmd: f64, u_cmd: f64, p: &SbmpcParams) -> Vec<TrackSample> {
    let n = p.samples();
    let mut cur = TrackSample { x: s.x, y: s.y, chi: s.course(), speed: s.speed() };
    let mut out = Vec::with_capacity(n);
    out.push(cur);
    for _ in 1..n {
        let (vx, vy) = cur.velocity();
        cur = TrackSample {
            x: cur.x + p.dt * vx,
            y: cur.y + p.dt * vy,
            chi: wrap_pi(cur.chi + p.dt * wrap_pi(chi_cmd - cur.chi) / p.t_chi),
            speed: cur.speed + p.dt * (u_cmd - cur.speed) / p.t_u,
        };
        out.push(cur);
    }
    out
}

/// Straight-line constant-velocity obstacle prediction.
pub fn predict_obstacle(o: &ObstacleState, p: &SbmpcParams) -> Vec<TrackSample> {
    let (vx, vy) = (o.speed * o.course.cos(), o.speed * o.course.sin());
    (0..p.samples())
        .map(|k| {
            let t = k as f64 * p.dt;
            TrackSample { x: o.x + vx * t, y: o.y + vy * t, chi: o.course, speed: o.speed }
        })
        .collect()
}

/// Encounter type from the own ship's point of view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encounter {
    HeadOn,
    /// Obstacle crossing from starboard; the own ship must give way.
    CrossingGiveWay,
    /// Obstacle crossing from port; the own ship stands on.
    CrossingStandOn,
    Overtaking,
    None,
}

const HEAD_ON_SECTOR: f64 = 22.5 * std::f64::consts::PI / 180.0;
const CROSSING_SECTOR: f64 = 112.5 * std::f64::consts::PI / 180.0;
const STERN_SECTOR: f64 = 67.5 * std::f64::consts::PI / 180.0;
const MOVING_SPEED: f64 = 0.1;

/// Classifies the geometry between the own ship and one obstacle at the
/// first sample of their predictions.
pub fn classify_encounter(own: &TrackSample, obs: &TrackSample) -> Encounter {
    let (dx, dy) = (obs.x - own.x, obs.y - own.y);
    if dx == 0.0 && dy == 0.0 {
        return Encounter::None;
    }
    // bearing of the obstacle seen from own ship, and vice versa
    let b_own = wrap_pi(dy.atan2(dx) - own.chi);
    let b_obs = wrap_pi((-dy).atan2(-dx) - obs.chi);
    let obstacle_moving = obs.speed > MOVING_SPEED;
    if obstacle_moving && b_own.abs() <= HEAD_ON_SECTOR && b_obs.abs() <= HEAD_ON_SECTOR {
        return Encounter::HeadOn;
    }
    let astern_of_obstacle = wrap_pi(b_obs - std::f64::consts::PI).abs() < STERN_SECTOR;
    if astern_of_obstacle && b_own.abs() < std::f64::consts::FRAC_PI_2 && own.speed > obs.speed {
        return Encounter::Overtaking;
    }
    if !obstacle_moving {
        return Encounter::None;
    }
    if (-CROSSING_SECTOR..=-HEAD_ON_SECTOR).contains(&b_own) {
        Encounter::CrossingGiveWay
    } else if (HEAD_ON_SECTOR..=CROSSING_SECTOR).contains(&b_own) {
        Encounter::CrossingStandOn
    } else {
        Encounter::None
    }
}

fn violates_colregs(encounter: Encounter, cand: &ColavDecision) -> bool {
    match encounter {
        Encounter::HeadOn => cand.chi_m > 0.0,
        Encounter::CrossingGiveWay => cand.chi_m > 0.0 || (cand.chi_m == 0.0 && cand.u_m >= 1.0),
        _ => false,
    }
}

/// Cost of one candidate given the predicted trajectories.
pub fn scenario_cost(
    own: &[TrackSample],
    obstacles: &[Vec<TrackSample>],
    cand: &ColavDecision,
    prev: &ColavDecision,
    p: &SbmpcParams,
) -> f64 {
    let t = &p.tuning;
    let mut hazard: f64 = 0.0;
    for obs in obstacles {
        let mut risk: f64 = 0.0;
        let mut close = false;
        for (a, b) in own.iter().zip(obs) {
            let d = (b.x - a.x).hypot(b.y - a.y);
            if d >= t.d_close {
                continue;
            }
            close = true;
            let (ax, ay) = a.velocity();
            let (bx, by) = b.velocity();
            let c = 1.0 + (ax - bx).hypot(ay - by) / t.u_ref;
            let r = t.q_col * (t.d_safe / d.max(1e-3)).powi(2);
            risk = risk.max(c * r);
        }
        let mu = match (own.first(), obs.first()) {
            (Some(a), Some(b)) if close && violates_colregs(classify_encounter(a, b), cand) => 1.0,
            _ => 0.0,
        };
        hazard = hazard.max(risk + t.kappa_colregs * mu);
    }
    let k_chi = if cand.chi_m > 0.0 { t.k_chi_p } else { t.k_chi_s };
    hazard + k_chi * cand.chi_m * cand.chi_m + t.k_du * (1.0 - cand.u_m) + t.k_dchi * (cand.chi_m - prev.chi_m).abs()
}

/// Candidates in evaluation order: by increasing `|χ_m|`, starboard before
/// port at equal magnitude, then by decreasing speed multiplier.
pub fn candidate_order(p: &SbmpcParams) -> Vec<ColavDecision> {
    let mut chis = p.chi_offsets.clone();
    chis.sort_by(|a, b| {
        a.abs().partial_cmp(&b.abs()).unwrap_or(Ordering::Equal).then(a.partial_cmp(b).unwrap_or(Ordering::Equal))
    });
    chis.dedup();
    let mut mults = p.u_mults.clone();
    mults.sort_by(|a, b| b.partial_cmp(a).unwrap_or(Ordering::Equal));
    mults.dedup();
    chis.iter().flat_map(|&chi_m| mults.iter().map(move |&u_m| ColavDecision { chi_m, u_m })).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateCost {
    pub decision: ColavDecision,
    pub cost: f64,
}

/// Scores every candidate, in [`candidate_order`].
pub fn evaluate_candidates(
    s: &VesselState,
    chi_d: f64,
    u_d: f64,
    prev: &ColavDecision,
    obstacles: &[ObstacleState],
    p: &SbmpcParams,
) -> Vec<CandidateCost> {
    let predicted: Vec<_> = obstacles.iter().map(|o| predict_obstacle(o, p)).collect();
    candidate_order(p)
        .into_iter()
        .map(|decision| {
            let own = predict_ownship(s, wrap_pi(chi_d + decision.chi_m), u_d * decision.u_m, p);
            CandidateCost { decision, cost: scenario_cost(&own, &predicted, &decision, prev, p) }
        })
        .collect()
}

/// Exhaustive search for the cheapest course/speed modification. The first
/// candidate in evaluation order wins ties.
pub fn run_sbmpc(
    s: &VesselState,
    chi_d: f64,
    u_d: f64,
    prev: &ColavDecision,
    obstacles: &[ObstacleState],
    p: &SbmpcParams,
) -> ColavDecision {
    let mut best: Option<CandidateCost> = None;
    for c in evaluate_candidates(s, chi_d, u_d, prev, obstacles, p) {
        if best.is_none_or(|b| c.cost < b.cost) {
            best = Some(c);
        }
    }
    best.map(|b| b.decision).unwrap_or_default()
}
