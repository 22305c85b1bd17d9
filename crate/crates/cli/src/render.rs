//! Static SVG map of a run.
//!
//! Layers are drawn bottom to top: land, depth areas shaded by depth,
//! bridges, waterway axes, the planned route, the own-ship trajectory, target
//! trajectories and finally the start and end markers. Output depends only on
//! the inputs, so two renders of the same run are byte-identical.

use std::fmt::Write;

use absim_core::chart::ChartFeatureSet;
use absim_core::geometry::{BoundingBox, Point};
use absim_core::planner::PlannedRoute;
use absim_core::sim::SimLog;

const WIDTH: f64 = 1000.0;
const MARGIN: f64 = 0.05;
const SHALLOW_RGB: [f64; 3] = [214.0, 236.0, 250.0];
const DEEP_RGB: [f64; 3] = [43.0, 108.0, 163.0];

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn new(bb: BoundingBox) -> Self {
        let w = (bb.xmax - bb.xmin).max(1.0);
        let h = (bb.ymax - bb.ymin).max(1.0);
        let pad = MARGIN * w.max(h);
        let (w, h) = (w + 2.0 * pad, h + 2.0 * pad);
        let scale = WIDTH / w;
        Frame { min_x: bb.xmin - pad, max_y: bb.ymax + pad, scale, height: (h * scale).round() }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        ((p.x - self.min_x) * self.scale, (self.max_y - p.y) * self.scale)
    }

    fn points(&self, pts: &[Point]) -> String {
        let mut s = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.2},{y:.2}");
        }
        s
    }

    fn path(&self, rings: &[Vec<Point>]) -> String {
        let mut d = String::new();
        for ring in rings.iter().filter(|r| !r.is_empty()) {
            let _ = write!(d, "M{}Z", self.points(ring).replace(' ', " L"));
        }
        d
    }
}

fn extent(chart: Option<&ChartFeatureSet>, route: &PlannedRoute, log: &SimLog) -> BoundingBox {
    let mut pts: Vec<Point> = route.path_points.clone();
    for r in &log.records {
        pts.push(r.state.position());
        pts.extend(r.targets.iter().map(|t| Point::new(t.x, t.y)));
    }
    let own = BoundingBox::of(pts.iter());
    let charted = chart.and_then(ChartFeatureSet::extent);
    match (own, charted) {
        (Some(a), Some(b)) => a.union(&b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => BoundingBox { xmin: 0.0, ymin: 0.0, xmax: 1.0, ymax: 1.0 },
    }
}

fn depth_colour(depth: f64, max_depth: f64) -> String {
    let t = if max_depth > 0.0 { (depth / max_depth).clamp(0.0, 1.0) } else { 0.0 };
    let c: Vec<u8> = (0..3).map(|i| (SHALLOW_RGB[i] + t * (DEEP_RGB[i] - SHALLOW_RGB[i])).round() as u8).collect();
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

/// Renders the chart, route and logged trajectories as an SVG document.
pub fn render_svg(chart: Option<&ChartFeatureSet>, route: &PlannedRoute, log: &SimLog) -> String {
    let frame = Frame::new(extent(chart, route, log));
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{h:.0}" viewBox="0 0 {WIDTH:.0} {h:.0}" style="background:#ffffff">"#,
        h = frame.height
    );

    if let Some(chart) = chart {
        if let Some(land) = chart.layer("lndare").filter(|l| !l.polygons.is_empty()) {
            svg.push_str(r##"<g id="land" fill="#ede3c8" stroke="#b9a97e" stroke-width="0.5">"##);
            svg.push('\n');
            for p in &land.polygons {
                let _ = writeln!(svg, r#"<path d="{}"/>"#, frame.path(&p.rings));
            }
            svg.push_str("</g>\n");
        }
        let depare = chart.depare();
        if !depare.polygons.is_empty() {
            let max_depth = depare.polygons.iter().map(|p| p.depth()).fold(0.0, f64::max);
            svg.push_str(r#"<g id="depth" stroke="none">"#);
            svg.push('\n');
            for p in &depare.polygons {
                let _ = writeln!(
                    svg,
                    r#"<path d="{}" fill="{}" fill-opacity="0.8"/>"#,
                    frame.path(&p.rings),
                    depth_colour(p.depth(), max_depth)
                );
            }
            svg.push_str("</g>\n");
        }
        if let Some(bridges) = chart.layer("bridge").filter(|l| !l.polygons.is_empty()) {
            svg.push_str(r##"<g id="bridges" fill="#8c8c8c" stroke="#505050" stroke-width="0.5">"##);
            svg.push('\n');
            for p in &bridges.polygons {
                let _ = writeln!(svg, r#"<path d="{}"/>"#, frame.path(&p.rings));
            }
            svg.push_str("</g>\n");
        }
        if let Some(axes) = chart.layer("wtwaxs").filter(|l| !l.lines.is_empty()) {
            svg.push_str(r##"<g id="axes" fill="none" stroke="#1f4e79" stroke-width="1" stroke-dasharray="6 4">"##);
            svg.push('\n');
            for l in &axes.lines {
                for part in &l.parts {
                    let _ = writeln!(svg, r#"<polyline points="{}"/>"#, frame.points(part));
                }
            }
            svg.push_str("</g>\n");
        }
    }

    if route.path_points.len() >= 2 {
        let _ = writeln!(
            svg,
            r##"<polyline id="route" points="{}" fill="none" stroke="#d62728" stroke-width="2"/>"##,
            frame.points(&route.path_points)
        );
    }

    if log.records.len() >= 2 {
        let _ = writeln!(
            svg,
            r##"<polyline id="ownship" points="{}" fill="none" stroke="#000000" stroke-width="1.5"/>"##,
            frame.points(&log.positions())
        );
        let n_targets = log.target_count();
        if n_targets > 0 {
            svg.push_str(r##"<g id="targets" fill="none" stroke="#ff7f0e" stroke-width="1.5">"##);
            svg.push('\n');
            for i in 0..n_targets {
                let track: Vec<Point> =
                    log.records.iter().filter_map(|r| r.targets.get(i)).map(|t| Point::new(t.x, t.y)).collect();
                let _ = writeln!(svg, r#"<polyline points="{}"/>"#, frame.points(&track));
            }
            svg.push_str("</g>\n");
        }
    }

    if let (Some(&start), Some(&end)) = (route.path_points.first(), route.path_points.last()) {
        let (sx, sy) = frame.map(start);
        let (ex, ey) = frame.map(end);
        let _ =
            writeln!(svg, r##"<circle id="start" cx="{sx:.2}" cy="{sy:.2}" r="7" fill="#2ca02c" stroke="#000000"/>"##);
        let _ = writeln!(
            svg,
            r##"<rect id="end" x="{:.2}" y="{:.2}" width="12" height="12" fill="#d62728" stroke="#000000"/>"##,
            ex - 6.0,
            ey - 6.0
        );
    }
    svg.push_str("</svg>\n");
    svg
}
