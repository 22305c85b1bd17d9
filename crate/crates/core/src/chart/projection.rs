use serde::{Deserialize, Serialize};

use super::RawFeature;
use crate::geometry::{BoundingBox, Point};

/// Mean Earth radius used by the tangent-plane projection, meters.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

/// Equirectangular projection about a reference longitude/latitude.
///
/// `x = R·Δλ·cos φ₀`, `y = R·Δφ` with angles in radians. Accurate to well
/// under a meter over the few-kilometre extent of an inland chart cell.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Projection {
    pub lon0: f64,
    pub lat0: f64,
}

impl Projection {
    pub fn new(lon0: f64, lat0: f64) -> Self {
        Self { lon0, lat0 }
    }

    /// Reference point at the centre of the bounding box of all vertices
    /// (given in degrees).
    pub fn about_centroid<'a>(features: impl IntoIterator<Item = &'a RawFeature>) -> Option<Self> {
        let mut bb: Option<BoundingBox> = None;
        for f in features {
            if let Some(fb) = BoundingBox::of(f.vertices()) {
                bb = Some(match bb {
                    Some(b) => b.union(&fb),
                    None => fb,
                });
            }
        }
        bb.map(|b| Projection::new(0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)))
    }

    /// Degrees `(lon, lat)` to local meters.
    pub fn forward(&self, lonlat: Point) -> Point {
        let cos_lat0 = self.lat0.to_radians().cos();
        Point::new(
            EARTH_RADIUS_M * (lonlat.x - self.lon0).to_radians() * cos_lat0,
            EARTH_RADIUS_M * (lonlat.y - self.lat0).to_radians(),
        )
    }

    /// Local meters back to degrees `(lon, lat)`.
    pub fn inverse(&self, xy: Point) -> Point {
        let cos_lat0 = self.lat0.to_radians().cos();
        Point::new(
            self.lon0 + (xy.x / (EARTH_RADIUS_M * cos_lat0)).to_degrees(),
            self.lat0 + (xy.y / EARTH_RADIUS_M).to_degrees(),
        )
    }

    pub fn project_feature(&self, f: &mut RawFeature) {
        for p in f.parts.iter_mut().flatten() {
            *p = self.forward(*p);
        }
    }
}
