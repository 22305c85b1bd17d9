//! Waypoint switching and line-of-sight (LOS) course references.
//!
//! The cross-track error `e` is positive when the vessel is to the left
//! (port side) of the path direction; the LOS law steers back with
//! `χ_d = π_p + atan(−e / D_los)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

use crate::geometry::{wrap_pi, Point};
use crate::model::VesselState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LosParams {
    /// Look-ahead distance, m.
    pub d_los: f64,
    /// Radius of acceptance, m.
    pub r_a: f64,
    /// Angle below which a waypoint counts as passed, rad.
    #[serde(default = "default_pass_angle")]
    pub pass_angle_threshold: f64,
    /// Either one speed for the whole route or one per waypoint, m/s.
    pub nominal_speeds: Vec<f64>,
}

fn default_pass_angle() -> f64 {
    FRAC_PI_2
}

impl LosParams {
    pub fn validate(&self, waypoint_count: usize) -> Result<(), String> {
        if !(self.d_los > 0.0 && self.d_los.is_finite()) {
            return Err("d_los must be positive".into());
        }
        if !(self.r_a > 0.0 && self.r_a.is_finite()) {
            return Err("r_a must be positive".into());
        }
        let th = self.pass_angle_threshold;
        if !(th > 0.0 && th <= std::f64::consts::PI) {
            return Err("pass_angle_threshold must lie in (0, π]".into());
        }
        let n = self.nominal_speeds.len();
        if n != 1 && n != waypoint_count {
            return Err(format!("nominal_speeds must have 1 or {waypoint_count} entries, got {n}"));
        }
        if self.nominal_speeds.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err("nominal speeds must be finite and non-negative".into());
        }
        Ok(())
    }

    /// Nominal speed when approaching waypoint `idx`.
    pub fn speed_at(&self, idx: usize) -> f64 {
        match self.nominal_speeds.as_slice() {
            [] => 0.0,
            [v] => *v,
            speeds => speeds[idx.min(speeds.len() - 1)],
        }
    }
}

/// Index of the waypoint currently approached; the active segment runs from
/// `wps[active_idx - 1]` to `wps[active_idx]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackState {
    pub active_idx: usize,
}

impl Default for TrackState {
    fn default() -> Self {
        TrackState { active_idx: 1 }
    }
}

fn waypoint_passed(pos: Point, from: Point, to: Point, p: &LosParams) -> bool {
    if pos.dist(to) < p.r_a {
        return true;
    }
    let dir = to - from;
    let rel = pos - to;
    let (nd, nr) = (dir.norm(), rel.norm());
    if nd == 0.0 || nr == 0.0 {
        return true;
    }
    let angle = (dir.dot(rel) / (nd * nr)).clamp(-1.0, 1.0).acos();
    angle < p.pass_angle_threshold
}

/// Advances the active waypoint past every waypoint the vessel has reached
/// or left behind. Never moves beyond the last waypoint.
pub fn update_active_waypoint(pos: Point, wps: &[Point], ts: TrackState, p: &LosParams) -> TrackState {
    if wps.len() < 2 {
        return ts;
    }
    let last = wps.len() - 1;
    let mut idx = ts.active_idx.clamp(1, last);
    while idx < last && waypoint_passed(pos, wps[idx - 1], wps[idx], p) {
        idx += 1;
    }
    TrackState { active_idx: idx }
}

/// Signed cross-track error of `pos` relative to the line through `from` and
/// `to`, positive to the left of the direction of travel.
pub fn cross_track_error(pos: Point, from: Point, to: Point) -> f64 {
    let azimuth = path_azimuth(from, to);
    let d = pos - from;
    -d.x * azimuth.sin() + d.y * azimuth.cos()
}

pub fn path_azimuth(from: Point, to: Point) -> f64 {
    let d = to - from;
    d.y.atan2(d.x)
}

/// Desired course and speed from the LOS law on the active segment.
pub fn compute_los_ref(s: &VesselState, wps: &[Point], ts: TrackState, p: &LosParams) -> (f64, f64) {
    let idx = ts.active_idx.clamp(1, wps.len().saturating_sub(1).max(1));
    let (from, to) = (wps[idx - 1], wps[idx]);
    let pi_p = path_azimuth(from, to);
    let e = cross_track_error(s.position(), from, to);
    let chi_d = wrap_pi(pi_p + (-e / p.d_los).atan());
    (chi_d, p.speed_at(idx))
}

/// Turns the course reference into a heading and yaw-rate reference.
///
/// The heading equals the course; the rate is the wrapped difference quotient
/// of successive headings passed through a first-order low-pass filter with
/// time constant `tau` (zero disables filtering).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeadingReference {
    pub tau: f64,
    prev_psi_d: Option<f64>,
    r_d: f64,
}

pub const DEFAULT_RATE_FILTER_TAU: f64 = 2.0;

impl Default for HeadingReference {
    fn default() -> Self {
        HeadingReference::new(DEFAULT_RATE_FILTER_TAU)
    }
}

impl HeadingReference {
    pub fn new(tau: f64) -> Self {
        HeadingReference { tau, prev_psi_d: None, r_d: 0.0 }
    }

    /// Returns `(ψ_d, r_d)` for this control step.
    pub fn step(&mut self, chi_d: f64, dt: f64) -> (f64, f64) {
        let psi_d = wrap_pi(chi_d);
        if let Some(prev) = self.prev_psi_d {
            let raw = wrap_pi(psi_d - prev) / dt;
            let alpha = dt / (self.tau + dt);
            self.r_d += alpha * (raw - self.r_d);
        }
        self.prev_psi_d = Some(psi_d);
        (psi_d, self.r_d)
    }
}
