//! 3-DOF MMG manoeuvring model: hull forces, rigid-body equations of motion
//! and fixed-step integration.

mod hull;
mod integrator;
mod params;
mod rigid_body;
mod vessel;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use hull::{derived_kinematics, hull_forces, hull_nondimensional, DerivedKinematics, U_EPS};
pub use integrator::integrate_step;
pub use params::{HullDerivatives, ShallowWaterTable, ShipParams};
pub use rigid_body::{rigid_body_accelerations, state_derivative};
pub use vessel::{ForceSet, VesselModel};

#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("sway/yaw mass matrix is singular (det = {0:e})")]
    SingularMassMatrix(f64),
    #[error("integration produced a non-finite state")]
    NonFiniteState,
    #[error(transparent)]
    Actuator(#[from] crate::actuators::ActuatorError),
}

/// Planar pose and body-frame velocities.
///
/// `x` east and `y` north in meters, `psi` the heading in radians measured
/// from the x axis towards y and kept in `(-π, π]`; `u`, `v` surge and sway
/// speed through the water, `r` the yaw rate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct VesselState {
    pub x: f64,
    pub y: f64,
    pub psi: f64,
    pub u: f64,
    pub v: f64,
    pub r: f64,
}

impl VesselState {
    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|v| v.is_finite())
    }

    pub fn as_array(&self) -> [f64; 6] {
        [self.x, self.y, self.psi, self.u, self.v, self.r]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        VesselState { x: a[0], y: a[1], psi: a[2], u: a[3], v: a[4], r: a[5] }
    }

    pub fn position(&self) -> crate::geometry::Point {
        crate::geometry::Point::new(self.x, self.y)
    }

    /// Speed over ground direction assuming no current: heading plus drift.
    pub fn course(&self) -> f64 {
        crate::geometry::wrap_pi(self.psi + self.v.atan2(self.u))
    }

    pub fn speed(&self) -> f64 {
        self.u.hypot(self.v)
    }
}

/// Generalized force in the body frame: surge force, sway force, yaw moment.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Forces {
    pub x: f64,
    pub y: f64,
    pub n: f64,
}

impl Forces {
    pub const fn new(x: f64, y: f64, n: f64) -> Self {
        Self { x, y, n }
    }
}

impl std::ops::Add for Forces {
    type Output = Forces;
    fn add(self, o: Forces) -> Forces {
        Forces::new(self.x + o.x, self.y + o.y, self.n + o.n)
    }
}

/// Uniform water current, m/s in the local frame.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Current {
    pub cx: f64,
    pub cy: f64,
}
