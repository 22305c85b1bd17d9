//! Bundled default parameter set: a synthetic 80 m inland motor barge.
//!
//! Hull derivatives are a representative full-form set rewritten in the
//! drift-angle form; none of these values are measured data.

use crate::actuators::{PropellerParams, RudderParams};
use crate::model::{HullDerivatives, ShallowWaterTable, ShipParams};

pub const LENGTH: f64 = 80.0;
pub const DRAUGHT: f64 = 2.5;
pub const RHO: f64 = 1000.0;
/// Deep-water resistance coefficient before the shallow-water multiplier.
pub const R0_DEEP: f64 = 0.022;

pub fn default_ship_params() -> ShipParams {
    let q = 0.5 * RHO * LENGTH * LENGTH * DRAUGHT;
    let m = 1.615e6;
    ShipParams {
        m,
        m_x: 0.022 * q,
        m_y: 0.223 * q,
        i_z: m * (0.25 * LENGTH).powi(2),
        j_z: 0.011 * q * LENGTH * LENGTH,
        x_g: 1.0,
        length: LENGTH,
        draught: DRAUGHT,
        rho: RHO,
        r0_prime: R0_DEEP,
    }
}

pub fn default_hull_derivatives() -> HullDerivatives {
    HullDerivatives {
        x_bb: -0.040,
        x_br: -0.002,
        x_rr: 0.011,
        x_bbbb: 0.771,
        y_b: 0.315,
        y_r: 0.083,
        y_bbb: 1.607,
        y_bbr: 0.379,
        y_brr: 0.391,
        y_rrr: 0.008,
        n_b: 0.137,
        n_r: -0.049,
        n_bbb: 0.030,
        n_bbr: -0.294,
        n_brr: -0.055,
        n_rrr: -0.013,
    }
}

pub fn default_shallow_water() -> ShallowWaterTable {
    ShallowWaterTable { points: vec![(1.2, 2.0), (1.5, 1.6), (2.0, 1.3), (3.0, 1.1), (4.0, 1.0)] }
}

pub fn default_propeller() -> PropellerParams {
    PropellerParams {
        diameter: 1.6,
        thrust_deduction: 0.2,
        rps: 4.0,
        wake_fraction: 0.2,
        kt_coeffs: [0.45, -0.35, -0.1],
    }
}

pub fn default_rudder() -> RudderParams {
    RudderParams {
        area: 4.0,
        aspect_ratio: 1.5,
        x_r: -0.5 * LENGTH,
        x_h: -0.45 * LENGTH,
        t_r: 0.387,
        a_h: 0.312,
        gamma_r: 0.4,
        l_r_prime: -0.71,
        epsilon: 1.09,
        kappa: 0.5,
        delta_max: 35f64.to_radians(),
        delta_rate_max: 5f64.to_radians(),
    }
}

/// The default barge as a complete vessel model in deep water.
pub fn default_vessel() -> crate::model::VesselModel {
    crate::model::VesselModel {
        ship: default_ship_params(),
        hull: default_hull_derivatives(),
        propeller: default_propeller(),
        rudder: default_rudder(),
        current: Default::default(),
    }
}

/// Nomoto gain and time constant fitted to the default barge at 3 m/s in
/// 5 m of water from a ±10° rudder square-wave record.
pub const NOMOTO_K: f64 = 0.107;
pub const NOMOTO_T: f64 = 14.4;

/// PID gains for the default barge at a 0.5 s control step. Negative
/// because positive rudder turns this hull to port (positive yaw rate).
pub fn default_pid_gains() -> crate::control::PidGains {
    crate::control::PidGains { kp: -2.0, ti_inv: -0.0005, td: -40.0, integral_limit: None }
}

pub fn default_mpc_params() -> crate::control::MpcParams {
    crate::control::MpcParams {
        ts: 2.0,
        n: 30,
        heading_gain: 1.0,
        rate_gain: 0.0,
        rudder_gain: 0.1,
        max_iter: 100,
        delta_max: default_rudder().delta_max,
        nomoto_k: NOMOTO_K,
        nomoto_t: NOMOTO_T,
        r_max: 3f64.to_radians(),
        rate_penalty: 1e4,
    }
}
