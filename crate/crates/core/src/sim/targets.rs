use super::config::{TargetConfig, TargetMotion};
use crate::colav::ObstacleState;
use crate::geometry::Point;
use crate::guidance::{compute_los_ref, update_active_waypoint, LosParams, TrackState};
use crate::model::VesselState;

/// A simulated target vessel.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    pub state: ObstacleState,
    pub motion: TargetMotion,
    pub track: TrackState,
}

impl Target {
    pub fn new(cfg: &TargetConfig) -> Self {
        Target { state: cfg.initial, motion: cfg.motion.clone(), track: TrackState::default() }
    }

    /// Advances the target by `dt`. Waypoint followers first point their
    /// course along the LOS reference, then move at constant speed.
    pub fn step(&mut self, dt: f64) {
        if let TargetMotion::Waypoints { points, d_los, r_a } = &self.motion {
            let los = LosParams {
                d_los: *d_los,
                r_a: *r_a,
                pass_angle_threshold: std::f64::consts::FRAC_PI_2,
                nominal_speeds: vec![self.state.speed],
            };
            let pos = Point::new(self.state.x, self.state.y);
            self.track = update_active_waypoint(pos, points, self.track, &los);
            let s = VesselState { x: pos.x, y: pos.y, ..Default::default() };
            self.state.course = compute_los_ref(&s, points, self.track, &los).0;
        }
        let o = &mut self.state;
        o.x += dt * o.speed * o.course.cos();
        o.y += dt * o.speed * o.course.sin();
    }
}

pub fn step_targets(targets: &mut [Target], dt: f64) {
    for t in targets {
        t.step(dt);
    }
}
