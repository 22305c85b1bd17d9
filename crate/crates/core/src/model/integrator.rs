use super::{ModelError, VesselState};
use crate::geometry::wrap_pi;

fn offset(s: &[f64; 6], k: &[f64; 6], h: f64) -> VesselState {
    let mut a = *s;
    for i in 0..6 {
        a[i] += h * k[i];
    }
    VesselState::from_array(a)
}

/// One classical fourth-order Runge–Kutta step.
///
/// `deriv` is evaluated at every stage state, so forces follow the stage
/// while actuator settings captured by the closure stay fixed for the step.
pub fn integrate_step<F>(s: &VesselState, dt: f64, mut deriv: F) -> Result<VesselState, ModelError>
where
    F: FnMut(&VesselState) -> Result<[f64; 6], ModelError>,
{
    let s0 = s.as_array();
    let k1 = deriv(s)?;
    let k2 = deriv(&offset(&s0, &k1, 0.5 * dt))?;
    let k3 = deriv(&offset(&s0, &k2, 0.5 * dt))?;
    let k4 = deriv(&offset(&s0, &k3, dt))?;
    let mut out = s0;
    for i in 0..6 {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    let mut next = VesselState::from_array(out);
    if !next.is_finite() {
        return Err(ModelError::NonFiniteState);
    }
    next.psi = wrap_pi(next.psi);
    Ok(next)
}
