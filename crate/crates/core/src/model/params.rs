use serde::{Deserialize, Serialize};

/// Mass, inertia and main dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShipParams {
    /// Mass, kg.
    pub m: f64,
    /// Surge added mass, kg.
    pub m_x: f64,
    /// Sway added mass, kg.
    pub m_y: f64,
    /// Yaw moment of inertia about the centre of gravity, kg·m².
    pub i_z: f64,
    /// Yaw added moment of inertia, kg·m².
    pub j_z: f64,
    /// Longitudinal position of the centre of gravity, m (positive forward).
    pub x_g: f64,
    /// Length between perpendiculars, m.
    pub length: f64,
    /// Draught, m.
    pub draught: f64,
    /// Water density, kg/m³.
    pub rho: f64,
    /// Resistance coefficient R₀′ as used by the hull model. Scenario loading
    /// scales a deep-water value by the shallow-water table when a water
    /// depth is given.
    pub r0_prime: f64,
}

impl ShipParams {
    pub fn validate(&self) -> Result<(), String> {
        let positive =
            [("m", self.m), ("i_z", self.i_z), ("length", self.length), ("draught", self.draught), ("rho", self.rho)];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(format!("{name} must be positive, got {v}"));
            }
        }
        for (name, v) in [("m_x", self.m_x), ("m_y", self.m_y), ("j_z", self.j_z)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(format!("{name} must be non-negative, got {v}"));
            }
        }
        if !self.x_g.is_finite() || !self.r0_prime.is_finite() {
            return Err("x_g and r0_prime must be finite".into());
        }
        Ok(())
    }
}

/// Nondimensional hull derivatives in drift angle `b` and yaw rate `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HullDerivatives {
    pub x_bb: f64,
    pub x_br: f64,
    pub x_rr: f64,
    pub x_bbbb: f64,
    pub y_b: f64,
    pub y_r: f64,
    pub y_bbb: f64,
    pub y_bbr: f64,
    pub y_brr: f64,
    pub y_rrr: f64,
    pub n_b: f64,
    pub n_r: f64,
    pub n_bbb: f64,
    pub n_bbr: f64,
    pub n_brr: f64,
    pub n_rrr: f64,
}

impl HullDerivatives {
    pub fn as_array(&self) -> [f64; 16] {
        [
            self.x_bb,
            self.x_br,
            self.x_rr,
            self.x_bbbb,
            self.y_b,
            self.y_r,
            self.y_bbb,
            self.y_bbr,
            self.y_brr,
            self.y_rrr,
            self.n_b,
            self.n_r,
            self.n_bbb,
            self.n_bbr,
            self.n_brr,
            self.n_rrr,
        ]
    }
}

/// Shallow-water multiplier on the deep-water resistance coefficient,
/// tabulated against depth-to-draught ratio `h/T`.
///
/// Points are `(h_over_t, multiplier)` sorted by ratio; queries outside the
/// table are clamped to the end values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShallowWaterTable {
    pub points: Vec<(f64, f64)>,
}

impl ShallowWaterTable {
    pub fn multiplier(&self, h_over_t: f64) -> f64 {
        let pts = &self.points;
        let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
            return 1.0;
        };
        if h_over_t <= first.0 {
            return first.1;
        }
        if h_over_t >= last.0 {
            return last.1;
        }
        for w in pts.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if h_over_t <= x1 {
                return y0 + (y1 - y0) * (h_over_t - x0) / (x1 - x0);
            }
        }
        last.1
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err("shallow-water table ratios must be strictly increasing".into());
        }
        if self.points.iter().any(|p| !(p.1 > 0.0)) {
            return Err("shallow-water multipliers must be positive".into());
        }
        Ok(())
    }
}
