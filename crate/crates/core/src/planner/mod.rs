//! Navigational graph over the waterway axes and depth-constrained routing.

mod depth;
mod graph;
mod refine;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chart::PolygonRecord;
use crate::geometry::Point;

pub use depth::{assign_depths, depth_at};
pub use graph::{build_graph, connect_components, count_components};
pub use refine::refine_path;
pub use search::{plan_path, shortest_path, ShortestPath};

pub const DEFAULT_MERGE_TOL: f64 = 1.0;
pub const DEFAULT_DUP_TOL: f64 = 0.5;
pub const DEFAULT_SMOOTH_WINDOW: usize = 5;

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("chart has no waterway-axis segments")]
    EmptyChart,
    #[error("navigation graph has no nodes")]
    EmptyGraph,
    #[error("no route from node {from} to node {to} with depth >= {min_depth} m")]
    NoRoute { from: usize, to: usize, min_depth: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NavEdge {
    pub a: usize,
    pub b: usize,
    /// Arc length of `polyline`, meters.
    pub length: f64,
    /// Vertices from node `a` to node `b`, endpoints included.
    pub polyline: Vec<Point>,
    /// Depth in meters, `0` until depths are assigned.
    pub depth: f64,
    /// Added by [`connect_components`] rather than read from the chart.
    pub synthetic: bool,
    pub region: Option<String>,
}

impl NavEdge {
    pub fn other(&self, node: usize) -> usize {
        if node == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Graph of waterway-axis endpoints joined by axis segments.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NavGraph {
    pub nodes: Vec<Point>,
    pub node_depths: Vec<f64>,
    /// Regions of the segments meeting at each node.
    pub node_regions: Vec<BTreeSet<String>>,
    pub edges: Vec<NavEdge>,
}

impl NavGraph {
    /// Index of the node nearest to `p` (lowest index on ties).
    pub fn nearest_node(&self, p: Point) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (i, n) in self.nodes.iter().enumerate() {
            let d = n.dist(p);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((i, d));
            }
        }
        best.map(|(i, _)| i)
    }

    pub fn synthetic_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.synthetic).count()
    }
}

/// Waypoints with per-point depth, as produced by the planner.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct PlannedRoute {
    pub path_points: Vec<Point>,
    pub path_depths: Vec<f64>,
}

impl PlannedRoute {
    pub fn length(&self) -> f64 {
        crate::geometry::polyline_length(&self.path_points)
    }
}

/// Re-export of the polygon membership test on a chart polygon record.
pub fn point_in_polygon(p: Point, poly: &PolygonRecord) -> bool {
    poly.contains(p)
}
