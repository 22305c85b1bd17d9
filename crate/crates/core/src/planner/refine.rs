use super::PlannedRoute;
use crate::geometry::Point;

fn remove_duplicates(points: &[Point], tol: f64) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::with_capacity(points.len());
    for (i, &p) in points.iter().enumerate() {
        match kept.last() {
            Some(&k) if points[k].dist(p) < tol => {}
            _ => kept.push(i),
        }
    }
    // The final point is kept verbatim, replacing a near-duplicate predecessor.
    if let (Some(&k), Some(last)) = (kept.last(), points.len().checked_sub(1)) {
        if k != last {
            if kept.len() > 1 {
                *kept.last_mut().unwrap() = last;
            } else {
                kept.push(last);
            }
        }
    }
    kept
}

/// Removes near-duplicate waypoints and smooths interior points with a
/// centred moving average of `window` points (shrunk symmetrically near the
/// ends). Endpoints are preserved exactly; depths are taken from the nearest
/// original waypoint.
pub fn refine_path(route: &PlannedRoute, dup_tol: f64, window: usize) -> PlannedRoute {
    assert!(window % 2 == 1, "smoothing window must be odd");
    let orig = &route.path_points;
    let kept = remove_duplicates(orig, dup_tol);
    let pts: Vec<Point> = kept.iter().map(|&i| orig[i]).collect();
    let n = pts.len();
    let half = window / 2;

    let mut smoothed = pts.clone();
    for (i, out) in smoothed.iter_mut().enumerate().take(n.saturating_sub(1)).skip(1) {
        let h = half.min(i).min(n - 1 - i);
        let span = &pts[i - h..=i + h];
        let k = span.len() as f64;
        *out = Point::new(span.iter().map(|p| p.x).sum::<f64>() / k, span.iter().map(|p| p.y).sum::<f64>() / k);
    }
    smoothed.dedup();

    let path_depths = smoothed
        .iter()
        .map(|&p| {
            let mut best = (f64::INFINITY, 0.0);
            for (q, &d) in orig.iter().zip(&route.path_depths) {
                let dist = q.dist(p);
                if dist < best.0 {
                    best = (dist, d);
                }
            }
            best.1
        })
        .collect();
    PlannedRoute { path_points: smoothed, path_depths }
}
