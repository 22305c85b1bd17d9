//! Ducted propeller thrust, twin-rudder forces and the rudder servo.
//!
//! Both rudders sit in the same centreline slipstream, so they see identical
//! inflow and each contributes the same normal force.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

use crate::model::{Forces, VesselState};

/// Propeller speeds below this (rev/s) produce no thrust.
const N_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum ActuatorError {
    #[error("rudder angle {delta} rad exceeds the limit ±{limit} rad")]
    DeltaOutOfRange { delta: f64, limit: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PropellerParams {
    /// Diameter D_P, m.
    pub diameter: f64,
    /// Thrust deduction factor t.
    pub thrust_deduction: f64,
    /// Shaft speed n_P, rev/s.
    pub rps: f64,
    /// Effective wake fraction w_P.
    pub wake_fraction: f64,
    /// Open-water thrust coefficient `K_T(J) = k0 + k1·J + k2·J²`.
    pub kt_coeffs: [f64; 3],
}

impl PropellerParams {
    pub fn kt(&self, j: f64) -> f64 {
        let [k0, k1, k2] = self.kt_coeffs;
        k0 + k1 * j + k2 * j * j
    }

    pub fn with_rps(mut self, rps: f64) -> Self {
        self.rps = rps;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.diameter > 0.0) {
            return Err("propeller diameter must be positive".into());
        }
        if !(0.0..1.0).contains(&self.thrust_deduction) {
            return Err("thrust deduction must lie in [0, 1)".into());
        }
        if !(0.0..1.0).contains(&self.wake_fraction) {
            return Err("wake fraction must lie in [0, 1)".into());
        }
        if !(self.rps >= 0.0) {
            return Err("propeller speed must be non-negative".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RudderParams {
    /// Area of one rudder A_R, m².
    pub area: f64,
    /// Aspect ratio Λ.
    pub aspect_ratio: f64,
    /// Longitudinal rudder position x_R, m (negative aft).
    pub x_r: f64,
    /// Acting point of the hull-induced lateral force x_H, m.
    pub x_h: f64,
    /// Steering resistance deduction t_R.
    pub t_r: f64,
    /// Rudder force increase factor a_H.
    pub a_h: f64,
    /// Flow straightening coefficient γ_R.
    pub gamma_r: f64,
    /// Nondimensional effective rudder lever l′_R.
    pub l_r_prime: f64,
    /// Wake ratio ε between rudder and propeller.
    pub epsilon: f64,
    /// Slipstream acceleration factor κ.
    pub kappa: f64,
    /// Rudder angle limit, rad.
    pub delta_max: f64,
    /// Rudder rate limit, rad/s.
    pub delta_rate_max: f64,
}

impl RudderParams {
    /// Lift-slope factor `6.13Λ / (Λ + 2.25)`.
    pub fn lift_slope(&self) -> f64 {
        6.13 * self.aspect_ratio / (self.aspect_ratio + 2.25)
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.area > 0.0 && self.aspect_ratio > 0.0) {
            return Err("rudder area and aspect ratio must be positive".into());
        }
        if !(self.delta_max > 0.0 && self.delta_rate_max > 0.0) {
            return Err("rudder angle and rate limits must be positive".into());
        }
        Ok(())
    }
}

/// Propeller thrust `X_P = (1 − t) ρ n² D⁴ K_T(J)` with `J = u(1 − w_P)/(n D)`.
pub fn propeller_thrust(u: f64, p: &PropellerParams, rho: f64) -> f64 {
    if p.rps.abs() < N_EPS {
        return 0.0;
    }
    let j = u * (1.0 - p.wake_fraction) / (p.rps * p.diameter);
    (1.0 - p.thrust_deduction) * rho * p.rps * p.rps * p.diameter.powi(4) * p.kt(j)
}

/// Effective rudder inflow speed `U_R` and angle of attack `α_R`.
///
/// The longitudinal inflow uses the slipstream relation
/// `u_R = ε u_P [1 + κ(√(1 + 8K_T/(πJ²)) − 1)]`, evaluated in the algebraically
/// equivalent form `ε[(1 − κ) u_P + κ √(u_P² + 8 K_T n² D² / π)]`, which stays
/// finite as `J → 0` and reduces to `ε κ n D √(8 k0 / π)` at bollard pull.
pub fn rudder_inflow(
    s: &VesselState,
    delta: f64,
    p: &PropellerParams,
    r: &RudderParams,
    ship_length: f64,
) -> (f64, f64) {
    let u_p = s.u * (1.0 - p.wake_fraction);
    let u_r = if p.rps.abs() < N_EPS {
        r.epsilon * u_p
    } else {
        let j = u_p / (p.rps * p.diameter);
        let jet = u_p * u_p + 8.0 * p.kt(j) * (p.rps * p.diameter).powi(2) / PI;
        r.epsilon * ((1.0 - r.kappa) * u_p + r.kappa * jet.max(0.0).sqrt())
    };
    let v_r = r.gamma_r * (s.v + r.l_r_prime * ship_length * s.r);
    let speed = u_r.hypot(v_r);
    let alpha = delta - v_r.atan2(u_r);
    (speed, alpha)
}

/// Rudder normal force of one rudder.
pub fn rudder_normal_force(u_r: f64, alpha_r: f64, r: &RudderParams, rho: f64) -> f64 {
    0.5 * rho * r.area * u_r * u_r * r.lift_slope() * alpha_r.sin()
}

/// Surge force, sway force and yaw moment from both rudders.
pub fn rudder_forces(
    s: &VesselState,
    delta: f64,
    p: &PropellerParams,
    r: &RudderParams,
    rho: f64,
    ship_length: f64,
) -> Result<Forces, ActuatorError> {
    if delta.abs() > r.delta_max * (1.0 + 1e-12) {
        return Err(ActuatorError::DeltaOutOfRange { delta, limit: r.delta_max });
    }
    let (u_r, alpha_r) = rudder_inflow(s, delta, p, r, ship_length);
    let f_total = 2.0 * rudder_normal_force(u_r, alpha_r, r, rho);
    let (sin_d, cos_d) = delta.sin_cos();
    Ok(Forces::new(
        -(1.0 - r.t_r) * f_total * sin_d,
        -(1.0 + r.a_h) * f_total * cos_d,
        -(r.x_r + r.a_h * r.x_h) * f_total * cos_d,
    ))
}

/// Moves the rudder towards the (saturated) command by at most one rate step.
pub fn rudder_servo(delta_actual: f64, delta_cmd: f64, dt: f64, r: &RudderParams) -> f64 {
    let target = delta_cmd.clamp(-r.delta_max, r.delta_max);
    let max_step = r.delta_rate_max * dt;
    let next = delta_actual + (target - delta_actual).clamp(-max_step, max_step);
    next.clamp(-r.delta_max, r.delta_max)
}
