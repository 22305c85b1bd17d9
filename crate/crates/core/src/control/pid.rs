use serde::{Deserialize, Serialize};

use crate::geometry::wrap_pi;

/// Gains of the discrete heading PID.
///
/// `delta = kp·e + td·(e − e_prev) + ti_inv·Σe` with `e = wrap(ψ − ψ_d)`.
/// The gains carry their own sign: for a vessel whose yaw rate increases
/// with positive rudder they must be negative to give negative feedback.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PidGains {
    pub kp: f64,
    /// Inverse integral time constant; 0 disables the integral term.
    #[serde(default)]
    pub ti_inv: f64,
    #[serde(default)]
    pub td: f64,
    /// Bound on the accumulated error sum, rad·steps. `None` derives it from
    /// the rudder limit so the integral term alone can at most saturate.
    #[serde(default)]
    pub integral_limit: Option<f64>,
}

impl PidGains {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.kp.is_finite() && self.kp != 0.0) {
            return Err("PID kp must be finite and non-zero".into());
        }
        if !(self.ti_inv.is_finite() && self.td.is_finite()) {
            return Err("PID gains must be finite".into());
        }
        if let Some(l) = self.integral_limit {
            if !(l >= 0.0) {
                return Err("integral_limit must be non-negative".into());
            }
        }
        Ok(())
    }

    fn limit(&self, delta_max: f64) -> f64 {
        match self.integral_limit {
            Some(l) => l,
            None if self.ti_inv != 0.0 => delta_max / self.ti_inv.abs(),
            None => f64::INFINITY,
        }
    }
}

/// Memory carried between PID steps.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PidState {
    pub psi_d_old: f64,
    pub error_old: f64,
    pub integral_acc: f64,
}

/// One PID step. Returns the saturated rudder command and the new state.
pub fn pid_step(psi: f64, psi_d: f64, g: &PidGains, st: &PidState, delta_max: f64) -> (f64, PidState) {
    let e = wrap_pi(psi - psi_d);
    let lim = g.limit(delta_max);
    let acc = (st.integral_acc + e).clamp(-lim, lim);
    let raw = g.kp * e + g.td * (e - st.error_old) + g.ti_inv * acc;
    let next = PidState { psi_d_old: psi_d, error_old: e, integral_acc: acc };
    (raw.clamp(-delta_max, delta_max), next)
}
