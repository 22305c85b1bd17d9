use super::LineRecord;
use crate::geometry::Point;

/// A cleaned waterway-axis polyline with its region tag.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSegment {
    pub points: Vec<Point>,
    pub region: Option<String>,
}

/// Drops vertices closer than `epsilon` to the previously kept vertex and
/// splits every polyline part into its own segment. Parts left with fewer
/// than two vertices are discarded.
pub fn clean_waterway_axes(lines: &[LineRecord], epsilon: f64) -> Vec<AxisSegment> {
    let mut out = Vec::new();
    for line in lines {
        for part in &line.parts {
            let mut kept: Vec<Point> = Vec::with_capacity(part.len());
            for &p in part {
                match kept.last() {
                    Some(&last) if last.dist(p) < epsilon => {}
                    _ => kept.push(p),
                }
            }
            if kept.len() >= 2 {
                out.push(AxisSegment { points: kept, region: line.info.region.clone() });
            }
        }
    }
    out
}
