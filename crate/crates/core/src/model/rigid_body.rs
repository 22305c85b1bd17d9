use super::{Current, Forces, ModelError, ShipParams, VesselState};

/// Solves the surge, sway and yaw equations of motion for `(u̇, v̇, ṙ)`:
///
/// ```text
/// (m + m_x) u̇ − (m + m_y) v r − x_G m r²       = X
/// (m + m_y) v̇ − (m + m_x) u r + x_G m ṙ        = Y
/// (I_z + x_G² m + J_z) ṙ + x_G m (v̇ + u r)     = N
/// ```
///
/// Sway and yaw are coupled through `x_G m` and solved together.
pub fn rigid_body_accelerations(f: Forces, s: &VesselState, p: &ShipParams) -> Result<(f64, f64, f64), ModelError> {
    let (m, xg) = (p.m, p.x_g);
    let du = (f.x + (m + p.m_y) * s.v * s.r + xg * m * s.r * s.r) / (m + p.m_x);

    let a11 = m + p.m_y;
    let a12 = xg * m;
    let a21 = xg * m;
    let a22 = p.i_z + xg * xg * m + p.j_z;
    let b1 = f.y + (m + p.m_x) * s.u * s.r;
    let b2 = f.n - xg * m * s.u * s.r;
    let det = a11 * a22 - a12 * a21;
    if det.abs() <= 1e-12 * (a11 * a22).abs() || !det.is_finite() {
        return Err(ModelError::SingularMassMatrix(det));
    }
    let dv = (b1 * a22 - a12 * b2) / det;
    let dr = (a11 * b2 - a21 * b1) / det;
    Ok((du, dv, dr))
}

/// Time derivative of `[x, y, ψ, u, v, r]` under the given total force and
/// a uniform current advecting the pose.
pub fn state_derivative(s: &VesselState, f: Forces, p: &ShipParams, current: Current) -> Result<[f64; 6], ModelError> {
    let (sin, cos) = s.psi.sin_cos();
    let (du, dv, dr) = rigid_body_accelerations(f, s, p)?;
    Ok([s.u * cos - s.v * sin + current.cx, s.u * sin + s.v * cos + current.cy, s.r, du, dv, dr])
}
