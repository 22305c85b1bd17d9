use serde::{Deserialize, Serialize};

use super::nomoto::{ControlState, Nomoto};
use super::ControlError;
use crate::geometry::wrap_pi;

/// Receding-horizon heading controller on a Nomoto prediction model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MpcParams {
    /// Prediction sample time, s.
    pub ts: f64,
    /// Horizon length in samples.
    pub n: usize,
    pub heading_gain: f64,
    #[serde(default)]
    pub rate_gain: f64,
    pub rudder_gain: f64,
    pub max_iter: usize,
    pub delta_max: f64,
    pub nomoto_k: f64,
    pub nomoto_t: f64,
    /// Yaw-rate bound of the permissible state set, rad/s.
    #[serde(default = "default_r_max")]
    pub r_max: f64,
    /// Weight of the quadratic penalty on yaw rates beyond `r_max`.
    #[serde(default = "default_rate_penalty")]
    pub rate_penalty: f64,
}

fn default_r_max() -> f64 {
    3f64.to_radians()
}

fn default_rate_penalty() -> f64 {
    1e4
}

impl MpcParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.ts > 0.0) || self.n == 0 {
            return Err("MPC requires ts > 0 and n ≥ 1".into());
        }
        let gains = [self.heading_gain, self.rate_gain, self.rudder_gain, self.rate_penalty];
        if gains.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err("MPC weights must be finite and non-negative".into());
        }
        if !(self.delta_max > 0.0 && self.r_max > 0.0) {
            return Err("MPC limits must be positive".into());
        }
        if !(self.nomoto_t > 0.0 && self.nomoto_k.is_finite()) {
            return Err("Nomoto T must be positive and K finite".into());
        }
        Ok(())
    }

    pub fn model(&self) -> Nomoto {
        Nomoto { k: self.nomoto_k, t: self.nomoto_t }
    }
}

/// Result of one MPC solve.
#[derive(Debug, Clone, PartialEq)]
pub struct MpcSolution {
    /// First control of the optimised sequence.
    pub delta_c: f64,
    pub sequence: Vec<f64>,
    pub cost: f64,
    /// Cost after every accepted iterate, starting with the initial guess.
    pub cost_trace: Vec<f64>,
    pub iterations: usize,
}

/// Tracking cost of a predicted sequence `pred = [s_0 … s_N]` against a
/// constant reference, plus rudder effort and the yaw-rate bound penalty.
pub fn mpc_cost(pred: &[ControlState], s_ref: ControlState, deltas: &[f64], p: &MpcParams) -> f64 {
    let mut j = 0.0;
    for s in pred.iter().skip(1) {
        let er = s.r - s_ref.r;
        let ep = wrap_pi(s.psi - s_ref.psi);
        let excess = (s.r.abs() - p.r_max).max(0.0);
        j += p.rate_gain * er * er + p.heading_gain * ep * ep + p.rate_penalty * excess * excess;
    }
    j + p.rudder_gain * deltas.iter().map(|d| d * d).sum::<f64>()
}

fn rollout(s: ControlState, deltas: &[f64], p: &MpcParams) -> Vec<ControlState> {
    let m = p.model();
    let mut out = Vec::with_capacity(deltas.len() + 1);
    let mut cur = s;
    out.push(cur);
    for &d in deltas {
        cur = m.step(cur, d, p.ts);
        out.push(cur);
    }
    out
}

/// Cost and its gradient with respect to the control sequence, by the
/// adjoint recursion through the linear Nomoto dynamics.
pub fn mpc_cost_and_gradient(s: ControlState, s_ref: ControlState, deltas: &[f64], p: &MpcParams) -> (f64, Vec<f64>) {
    let pred = rollout(s, deltas, p);
    let cost = mpc_cost(&pred, s_ref, deltas, p);
    let n = deltas.len();
    let a = p.ts / p.nomoto_t;
    let b = p.ts * p.nomoto_k / p.nomoto_t;
    let mut grad = vec![0.0; n];
    // costate (λ_r, λ_ψ) of the sample after control i
    let (mut lr, mut lp) = (0.0, 0.0);
    for i in (0..n).rev() {
        let st = pred[i + 1];
        let excess = (st.r.abs() - p.r_max).max(0.0);
        let dl_dr = 2.0 * p.rate_gain * (st.r - s_ref.r) + 2.0 * p.rate_penalty * excess * st.r.signum();
        let dl_dp = 2.0 * p.heading_gain * wrap_pi(st.psi - s_ref.psi);
        // λ_{i+1} = ∂ℓ/∂s_{i+1} + Aᵀ λ_{i+2}
        let nr = dl_dr + (1.0 - a) * lr + p.ts * lp;
        let np = dl_dp + lp;
        lr = nr;
        lp = np;
        grad[i] = 2.0 * p.rudder_gain * deltas[i] + b * lr;
    }
    (cost, grad)
}

fn project(x: &mut [f64], lim: f64) {
    for v in x {
        *v = v.clamp(-lim, lim);
    }
}

fn projected_gradient_norm(x: &[f64], g: &[f64], lim: f64) -> f64 {
    x.iter().zip(g).map(|(xi, gi)| (xi - (xi - gi).clamp(-lim, lim)).powi(2)).sum::<f64>().sqrt()
}

const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACK: usize = 60;
const TOL: f64 = 1e-8;

/// Solves the finite-horizon problem by projected gradient descent with
/// Barzilai–Borwein steps and Armijo backtracking. The iteration starts from
/// whichever of `warm_start` (if it has length `n`) and the zero sequence is
/// cheaper.
pub fn mpc_solve(
    s: ControlState,
    s_ref: ControlState,
    warm_start: &[f64],
    p: &MpcParams,
) -> Result<MpcSolution, ControlError> {
    let lim = p.delta_max;
    let zeros = vec![0.0; p.n];
    let (mut x, mut fx, mut g) = {
        let (fz, gz) = mpc_cost_and_gradient(s, s_ref, &zeros, p);
        if warm_start.len() == p.n {
            let mut w = warm_start.to_vec();
            project(&mut w, lim);
            let (fw, gw) = mpc_cost_and_gradient(s, s_ref, &w, p);
            if fw < fz {
                (w, fw, gw)
            } else {
                (zeros, fz, gz)
            }
        } else {
            (zeros, fz, gz)
        }
    };
    if !fx.is_finite() {
        return Err(ControlError::NonFiniteCost);
    }
    let mut trace = vec![fx];
    let gmax = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut alpha = if gmax > 0.0 { 0.1 * lim / gmax } else { 1.0 };
    let mut iterations = 0;
    while iterations < p.max_iter {
        if projected_gradient_norm(&x, &g, lim) < TOL {
            break;
        }
        iterations += 1;
        let mut accepted = None;
        let mut step = alpha;
        for _ in 0..MAX_BACKTRACK {
            let mut cand: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
            project(&mut cand, lim);
            let (fc, gc) = mpc_cost_and_gradient(s, s_ref, &cand, p);
            if !fc.is_finite() {
                return Err(ControlError::NonFiniteCost);
            }
            let decrease: f64 = g.iter().zip(cand.iter().zip(&x)).map(|(gi, (c, xi))| gi * (c - xi)).sum();
            if fc <= fx + ARMIJO * decrease {
                accepted = Some((cand, fc, gc));
                break;
            }
            step *= 0.5;
        }
        let Some((xn, fxn, gn)) = accepted else { break };
        let sy: f64 = xn.iter().zip(&x).zip(gn.iter().zip(&g)).map(|((a, b), (c, d))| (a - b) * (c - d)).sum();
        let ss: f64 = xn.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
        alpha = if sy > 0.0 { (ss / sy).clamp(1e-12, 1e12) } else { step * 2.0 };
        let stalled = ss == 0.0;
        x = xn;
        fx = fxn;
        g = gn;
        trace.push(fx);
        if stalled {
            break;
        }
    }
    Ok(MpcSolution { delta_c: x[0], sequence: x, cost: fx, cost_trace: trace, iterations })
}

/// Previous solution shifted one sample forward, last entry repeated.
pub fn shift_warm_start(prev: &[f64]) -> Vec<f64> {
    match prev {
        [] => Vec::new(),
        [_, rest @ ..] => {
            let mut v = rest.to_vec();
            v.push(*prev.last().unwrap());
            v
        }
    }
}
