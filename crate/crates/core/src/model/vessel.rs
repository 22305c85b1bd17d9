use serde::{Deserialize, Serialize};

use super::{
    hull_forces, integrate_step, state_derivative, Current, Forces, HullDerivatives, ModelError, ShipParams,
    VesselState,
};
use crate::actuators::{propeller_thrust, rudder_forces, PropellerParams, RudderParams};

/// Breakdown of the forces acting on the hull at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ForceSet {
    pub hull: Forces,
    pub propeller: f64,
    pub rudder: Forces,
}

impl ForceSet {
    pub fn total(&self) -> Forces {
        self.hull + Forces::new(self.propeller, 0.0, 0.0) + self.rudder
    }
}

/// The full hull + propeller + rudder model of one vessel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VesselModel {
    pub ship: ShipParams,
    pub hull: HullDerivatives,
    pub propeller: PropellerParams,
    pub rudder: RudderParams,
    #[serde(default)]
    pub current: Current,
}

impl VesselModel {
    /// Forces at state `s` for rudder angle `delta` and shaft speed `rps`.
    pub fn forces(&self, s: &VesselState, delta: f64, rps: f64) -> Result<ForceSet, ModelError> {
        let prop = self.propeller.with_rps(rps);
        Ok(ForceSet {
            hull: hull_forces(s, &self.ship, &self.hull),
            propeller: propeller_thrust(s.u, &prop, self.ship.rho),
            rudder: rudder_forces(s, delta, &prop, &self.rudder, self.ship.rho, self.ship.length)?,
        })
    }

    pub fn derivative(&self, s: &VesselState, delta: f64, rps: f64) -> Result<[f64; 6], ModelError> {
        let f = self.forces(s, delta, rps)?.total();
        state_derivative(s, f, &self.ship, self.current)
    }

    /// Advances the state by `dt` holding rudder angle and shaft speed fixed.
    pub fn step(&self, s: &VesselState, delta: f64, rps: f64, dt: f64) -> Result<VesselState, ModelError> {
        integrate_step(s, dt, |st| self.derivative(st, delta, rps))
    }
}
