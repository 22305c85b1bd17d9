use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{NavGraph, PlanError, PlannedRoute};
use crate::geometry::Point;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Frontier {
    cost: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    // Reversed so the max-heap pops the cheapest entry, then the lowest node index.
    fn cmp(&self, other: &Self) -> Ordering {
        other.cost.total_cmp(&self.cost).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a node-to-node search.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPath {
    pub cost: f64,
    pub nodes: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Dijkstra over edges with `depth >= min_depth`, weighted by edge length.
///
/// Ties are broken by predecessor index: among equal-cost routes the one
/// whose node sequence, read backwards from `to`, is lexicographically
/// smallest is returned.
pub fn shortest_path(g: &NavGraph, from: usize, to: usize, min_depth: f64) -> Result<ShortestPath, PlanError> {
    let n = g.nodes.len();
    if n == 0 {
        return Err(PlanError::EmptyGraph);
    }
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in g.edges.iter().enumerate() {
        if e.depth >= min_depth {
            adjacency[e.a].push(i);
            adjacency[e.b].push(i);
        }
    }

    let mut dist = vec![f64::INFINITY; n];
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[from] = 0.0;
    heap.push(Frontier { cost: 0.0, node: from });

    while let Some(Frontier { cost, node }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        if node == to {
            break;
        }
        for &ei in &adjacency[node] {
            let e = &g.edges[ei];
            let next = e.other(node);
            let c = cost + e.length;
            let better_tie = c == dist[next] && !done[next] && via[next].is_some_and(|p| g.edges[p].other(next) > node);
            if c < dist[next] || better_tie {
                dist[next] = c;
                via[next] = Some(ei);
                heap.push(Frontier { cost: c, node: next });
            }
        }
    }

    if !dist[to].is_finite() {
        return Err(PlanError::NoRoute { from, to, min_depth });
    }
    let mut nodes = vec![to];
    let mut edges = Vec::new();
    let mut cur = to;
    while let Some(ei) = via[cur] {
        edges.push(ei);
        cur = g.edges[ei].other(cur);
        nodes.push(cur);
    }
    nodes.reverse();
    edges.reverse();
    Ok(ShortestPath { cost: dist[to], nodes, edges })
}

/// Plans a depth-feasible route between the graph nodes nearest to the two
/// given points. The route follows the edge polylines.
pub fn plan_path(g: &NavGraph, start: Point, goal: Point, min_depth: f64) -> Result<PlannedRoute, PlanError> {
    let from = g.nearest_node(start).ok_or(PlanError::EmptyGraph)?;
    let to = g.nearest_node(goal).ok_or(PlanError::EmptyGraph)?;
    let sp = shortest_path(g, from, to, min_depth)?;

    let mut route = PlannedRoute { path_points: vec![g.nodes[from]], path_depths: vec![g.node_depths[from]] };
    for (k, &ei) in sp.edges.iter().enumerate() {
        let e = &g.edges[ei];
        let forward = e.a == sp.nodes[k];
        let mut poly = e.polyline.clone();
        if !forward {
            poly.reverse();
        }
        let end = sp.nodes[k + 1];
        let last = poly.len() - 1;
        for (i, &p) in poly.iter().enumerate().skip(1) {
            if route.path_points.last() == Some(&p) {
                continue;
            }
            let depth = if i == last { g.node_depths[end] } else { e.depth };
            route.path_points.push(p);
            route.path_depths.push(depth);
        }
    }
    Ok(route)
}
