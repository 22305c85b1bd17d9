//! Planar geometry primitives shared by the chart, planner and metrics code.
//!
//! All coordinates are meters in the local tangent plane (x east, y north).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// A point in the local metric frame. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, other: Point) -> Point {
        Point::new(self.x - other.x, self.y - other.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Axis-aligned bounding box `(xmin, ymin, xmax, ymax)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct BoundingBox {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl BoundingBox {
    /// Tight box around the given points; `None` for an empty iterator.
    pub fn of<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut bb = BoundingBox { xmin: first.x, ymin: first.y, xmax: first.x, ymax: first.y };
        for p in it {
            bb.xmin = bb.xmin.min(p.x);
            bb.ymin = bb.ymin.min(p.y);
            bb.xmax = bb.xmax.max(p.x);
            bb.ymax = bb.ymax.max(p.y);
        }
        Some(bb)
    }

    /// Closed containment (the boundary counts as inside).
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    pub fn union(&self, other: &BoundingBox) -> BoundingBox {
        BoundingBox {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }
}

impl From<[f64; 4]> for BoundingBox {
    fn from(a: [f64; 4]) -> Self {
        BoundingBox { xmin: a[0], ymin: a[1], xmax: a[2], ymax: a[3] }
    }
}

impl From<BoundingBox> for [f64; 4] {
    fn from(b: BoundingBox) -> Self {
        [b.xmin, b.ymin, b.xmax, b.ymax]
    }
}

/// Wraps an angle to `(-π, π]`.
pub fn wrap_pi(angle: f64) -> f64 {
    if angle > -PI && angle <= PI {
        return angle;
    }
    let two_pi = 2.0 * PI;
    let mut a = angle.rem_euclid(two_pi);
    if a > PI {
        a -= two_pi;
    }
    a
}

/// Sum of segment lengths along a polyline.
pub fn polyline_length(points: &[Point]) -> f64 {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Point at the given fraction of arc length along a polyline.
pub fn point_along(points: &[Point], fraction: f64) -> Option<Point> {
    let first = *points.first()?;
    let total = polyline_length(points);
    if total == 0.0 {
        return Some(first);
    }
    let target = total * fraction.clamp(0.0, 1.0);
    let mut acc = 0.0;
    for w in points.windows(2) {
        let seg = w[0].dist(w[1]);
        if acc + seg >= target && seg > 0.0 {
            return Some(w[0].lerp(w[1], (target - acc) / seg));
        }
        acc += seg;
    }
    points.last().copied()
}

/// Closest point on segment `a-b` to `p`, with the segment parameter in `[0, 1]`.
pub fn closest_on_segment(p: Point, a: Point, b: Point) -> (Point, f64) {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (a.lerp(b, t), t)
}

/// Closest point on a polyline. Ties go to the earlier segment.
/// Returns `None` when the polyline has fewer than two points.
pub fn closest_on_polyline(p: Point, path: &[Point]) -> Option<(Point, f64)> {
    if path.len() < 2 {
        return None;
    }
    let mut best: Option<(Point, f64)> = None;
    for w in path.windows(2) {
        let (q, _) = closest_on_segment(p, w[0], w[1]);
        let d = p.dist(q);
        match best {
            Some((_, bd)) if d >= bd => {}
            _ => best = Some((q, d)),
        }
    }
    best
}

/// Distance tolerance used by the on-boundary test, relative to the segment scale.
const BOUNDARY_REL_EPS: f64 = 1e-12;

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    let ab = b - a;
    let ap = p - a;
    if ab.x == 0.0 && ab.y == 0.0 {
        return p == a;
    }
    let scale = ab.norm().max(ap.norm()).max(1.0);
    if ab.cross(ap).abs() > BOUNDARY_REL_EPS * scale * scale {
        return false;
    }
    let t = ap.dot(ab);
    t >= 0.0 && t <= ab.dot(ab)
}

/// Winding number of a closed ring around `p` (ring may or may not repeat its first vertex).
fn winding_number(p: Point, ring: &[Point]) -> i32 {
    let mut wn = 0;
    let n = ring.len();
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        let side = (b - a).cross(p - a);
        if a.y <= p.y {
            if b.y > p.y && side > 0.0 {
                wn += 1;
            }
        } else if b.y <= p.y && side < 0.0 {
            wn -= 1;
        }
    }
    wn
}

/// Polygon membership with the boundary counted as inside.
///
/// `rings` holds the outer ring and any holes. A point is inside when an odd
/// number of rings enclose it, so hole orientation does not matter.
pub fn point_in_polygon(p: Point, rings: &[Vec<Point>]) -> bool {
    let mut enclosing = 0usize;
    for ring in rings {
        if ring.len() < 2 {
            continue;
        }
        let n = ring.len();
        for i in 0..n {
            if on_segment(p, ring[i], ring[(i + 1) % n]) {
                return true;
            }
        }
        if winding_number(p, ring) != 0 {
            enclosing += 1;
        }
    }
    enclosing % 2 == 1
}
