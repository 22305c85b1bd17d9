//! Rudder controllers: a discrete PID on heading error and a receding-horizon
//! MPC built on a first-order Nomoto model.

mod mpc;
mod nomoto;
mod pid;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use mpc::{mpc_cost, mpc_cost_and_gradient, mpc_solve, shift_warm_start, MpcParams, MpcSolution};
pub use nomoto::{fit_nomoto, ControlState, Nomoto};
pub use pid::{pid_step, PidGains, PidState};

#[derive(Debug, Error, PartialEq)]
pub enum ControlError {
    #[error("rudder angle {delta} outside ±{limit}")]
    DeltaOutOfRange { delta: f64, limit: f64 },
    #[error("MPC cost became non-finite")]
    NonFiniteCost,
    #[error("Nomoto fit failed: {0}")]
    FitFailed(String),
}

/// Controller choice as written in a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ControllerConfig {
    Pid(PidGains),
    Mpc(MpcParams),
}

/// A controller together with its memory.
#[derive(Debug, Clone, PartialEq)]
pub enum Controller {
    Pid { gains: PidGains, state: PidState },
    Mpc { params: MpcParams, previous: Vec<f64> },
}

impl Controller {
    pub fn new(cfg: &ControllerConfig) -> Self {
        match cfg {
            ControllerConfig::Pid(g) => Controller::Pid { gains: *g, state: PidState::default() },
            ControllerConfig::Mpc(p) => Controller::Mpc { params: p.clone(), previous: Vec::new() },
        }
    }

    /// Rudder command for the measured `(r, ψ)` and the reference
    /// `(r_d, ψ_d)`, limited to `±delta_max`.
    pub fn step(&mut self, s: ControlState, s_ref: ControlState, delta_max: f64) -> Result<f64, ControlError> {
        match self {
            Controller::Pid { gains, state } => {
                let (d, next) = pid_step(s.psi, s_ref.psi, gains, state, delta_max);
                *state = next;
                Ok(d)
            }
            Controller::Mpc { params, previous } => {
                let warm = shift_warm_start(previous);
                let sol = mpc_solve(s, s_ref, &warm, params)?;
                *previous = sol.sequence;
                Ok(sol.delta_c.clamp(-delta_max, delta_max))
            }
        }
    }
}
