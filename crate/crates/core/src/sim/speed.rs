use crate::model::{VesselModel, VesselState};

/// Steady straight-ahead speed as a function of shaft speed, sampled on a
/// uniform rps grid. Commanded speeds are mapped back to rps by linear
/// interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedTable {
    pub rps: Vec<f64>,
    pub speed: Vec<f64>,
}

const SAMPLES: usize = 121;
const BISECTION_STEPS: usize = 200;

/// Net surge force in straight motion at speed `u` with the rudder centred.
fn surge_force(model: &VesselModel, u: f64, rps: f64) -> f64 {
    let s = VesselState { u, ..Default::default() };
    model.forces(&s, 0.0, rps).map(|f| f.total().x).unwrap_or(f64::NAN)
}

/// Speed at which thrust balances resistance for the given shaft speed.
pub fn steady_speed(model: &VesselModel, rps: f64) -> f64 {
    if rps <= 0.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    while surge_force(model, hi, rps) > 0.0 && hi < 1e3 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if surge_force(model, mid, rps) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi.max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

impl SpeedTable {
    /// Samples rps from 0 to `rps_max`.
    pub fn build(model: &VesselModel, rps_max: f64) -> Self {
        let rps: Vec<f64> = (0..SAMPLES).map(|i| rps_max * i as f64 / (SAMPLES - 1) as f64).collect();
        let speed = rps.iter().map(|&n| steady_speed(model, n)).collect();
        SpeedTable { rps, speed }
    }

    pub fn max_speed(&self) -> f64 {
        self.speed.last().copied().unwrap_or(0.0)
    }

    /// Shaft speed giving steady speed `u`, clamped to the table range.
    pub fn rps_for(&self, u: f64) -> f64 {
        if u <= self.speed[0] {
            return self.rps[0];
        }
        for i in 1..self.speed.len() {
            let (u0, u1) = (self.speed[i - 1], self.speed[i]);
            if u <= u1 && u1 > u0 {
                let f = (u - u0) / (u1 - u0);
                return self.rps[i - 1] + f * (self.rps[i] - self.rps[i - 1]);
            }
        }
        *self.rps.last().unwrap()
    }
}
