use serde::{Deserialize, Serialize};

use super::ControlError;

/// First-order Nomoto yaw model `T ṙ + r = K δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nomoto {
    pub k: f64,
    pub t: f64,
}

/// Heading-loop state `(r, ψ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ControlState {
    pub r: f64,
    pub psi: f64,
}

impl Nomoto {
    /// One forward-Euler step of length `ts`.
    pub fn step(&self, s: ControlState, delta: f64, ts: f64) -> ControlState {
        ControlState { r: s.r + ts * (self.k * delta - s.r) / self.t, psi: s.psi + ts * s.r }
    }

    /// States `s_0 … s_N` under the rudder sequence `deltas`.
    pub fn predict(
        &self,
        s: ControlState,
        deltas: &[f64],
        ts: f64,
        delta_max: f64,
    ) -> Result<Vec<ControlState>, ControlError> {
        let mut out = Vec::with_capacity(deltas.len() + 1);
        out.push(s);
        let mut cur = s;
        for &d in deltas {
            if d.abs() > delta_max {
                return Err(ControlError::DeltaOutOfRange { delta: d, limit: delta_max });
            }
            cur = self.step(cur, d, ts);
            out.push(cur);
        }
        Ok(out)
    }
}

/// Least-squares Nomoto fit from a uniformly sampled record of rudder angle
/// and yaw rate, regressing `(r[k+1] − r[k])/dt` on `δ[k]` and `r[k]`.
pub fn fit_nomoto(delta: &[f64], r: &[f64], dt: f64) -> Result<Nomoto, ControlError> {
    if delta.len() != r.len() || r.len() < 3 || !(dt > 0.0) {
        return Err(ControlError::FitFailed("need at least 3 equally long samples".into()));
    }
    let (mut sdd, mut sdr, mut srr, mut sdy, mut sry) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in 0..r.len() - 1 {
        let y = (r[k + 1] - r[k]) / dt;
        let (d, rk) = (delta[k], r[k]);
        sdd += d * d;
        sdr += d * rk;
        srr += rk * rk;
        sdy += d * y;
        sry += rk * y;
    }
    let det = sdd * srr - sdr * sdr;
    if det.abs() <= 1e-14 * (sdd * srr).abs() || det == 0.0 {
        return Err(ControlError::FitFailed("regressors are collinear".into()));
    }
    let a = (sdy * srr - sdr * sry) / det;
    let b = (sdd * sry - sdr * sdy) / det;
    if !(b < 0.0) {
        return Err(ControlError::FitFailed("fitted yaw dynamics are not stable".into()));
    }
    Ok(Nomoto { k: -a / b, t: -1.0 / b })
}
