use super::{Forces, HullDerivatives, ShipParams, VesselState};

/// Below this total speed the drift angle, nondimensional yaw rate and hull
/// forces are taken as zero.
pub const U_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedKinematics {
    /// Total speed through water, m/s.
    pub speed: f64,
    /// Drift angle `atan2(-v, u)`, rad.
    pub beta: f64,
    /// Nondimensional yaw rate `r·L/U`.
    pub r_prime: f64,
}

pub fn derived_kinematics(s: &VesselState, p: &ShipParams) -> DerivedKinematics {
    let speed = s.u.hypot(s.v);
    if speed < U_EPS {
        return DerivedKinematics { speed, beta: 0.0, r_prime: 0.0 };
    }
    DerivedKinematics { speed, beta: (-s.v).atan2(s.u), r_prime: s.r * p.length / speed }
}

/// Nondimensional hull surge force, sway force and yaw moment.
pub fn hull_nondimensional(beta: f64, r: f64, r0_prime: f64, d: &HullDerivatives) -> (f64, f64, f64) {
    let (b2, r2) = (beta * beta, r * r);
    let x = -r0_prime * beta.cos().powi(2) + d.x_bb * b2 + d.x_br * beta * r + d.x_rr * r2 + d.x_bbbb * b2 * b2;
    let y = d.y_b * beta + d.y_r * r + d.y_bbb * b2 * beta + d.y_bbr * b2 * r + d.y_brr * beta * r2 + d.y_rrr * r2 * r;
    let n = d.n_b * beta + d.n_r * r + d.n_bbb * b2 * beta + d.n_bbr * b2 * r + d.n_brr * beta * r2 + d.n_rrr * r2 * r;
    (x, y, n)
}

/// Dimensional hull forces `(X_H, Y_H, N_H)`.
pub fn hull_forces(s: &VesselState, p: &ShipParams, d: &HullDerivatives) -> Forces {
    let k = derived_kinematics(s, p);
    if k.speed < U_EPS {
        return Forces::default();
    }
    let (x, y, n) = hull_nondimensional(k.beta, k.r_prime, p.r0_prime, d);
    let q = 0.5 * p.rho * p.length * p.draught * k.speed * k.speed;
    Forces::new(q * x, q * y, q * p.length * n)
}
