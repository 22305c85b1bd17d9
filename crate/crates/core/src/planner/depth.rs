use std::collections::BTreeSet;

use super::NavGraph;
use crate::chart::Layer;
use crate::geometry::{point_along, Point};

/// Minimum depth over the depth polygons containing `p`, or 0 if none does.
///
/// Polygons tagged with one of `regions` are searched first; the rest of the
/// layer is only consulted when none of those match. Each candidate is
/// screened by its bounding box before the exact membership test.
pub fn depth_at(p: Point, regions: &BTreeSet<String>, depare: &Layer) -> f64 {
    let search = |in_region: bool| -> Option<f64> {
        depare
            .polygons
            .iter()
            .filter(|poly| {
                let tagged = poly.info.region.as_ref().is_some_and(|r| regions.contains(r));
                tagged == in_region
            })
            .filter(|poly| poly.info.boundingbox.is_none_or(|bb| bb.contains(p)))
            .filter(|poly| poly.contains(p))
            .map(|poly| poly.depth())
            .reduce(f64::min)
    };
    let found = if regions.is_empty() { search(false) } else { search(true).or_else(|| search(false)) };
    found.unwrap_or(0.0)
}

/// Tags nodes and edges with depth. Edge depth is the minimum of its two end
/// nodes and the depth at its arc-length midpoint.
pub fn assign_depths(mut g: NavGraph, depare: &Layer) -> NavGraph {
    g.node_depths = g.nodes.iter().zip(&g.node_regions).map(|(&p, regions)| depth_at(p, regions, depare)).collect();
    for e in &mut g.edges {
        let regions: BTreeSet<String> = e.region.iter().cloned().collect();
        let mid = point_along(&e.polyline, 0.5).unwrap_or(g.nodes[e.a]);
        let mid_depth = depth_at(mid, &regions, depare);
        e.depth = g.node_depths[e.a].min(g.node_depths[e.b]).min(mid_depth);
    }
    g
}
