use std::collections::BTreeSet;

use super::{NavEdge, NavGraph, PlanError};
use crate::chart::AxisSegment;
use crate::geometry::{polyline_length, Point};

fn snap(nodes: &mut Vec<Point>, p: Point, tol: f64) -> usize {
    let mut best: Option<(usize, f64)> = None;
    for (i, n) in nodes.iter().enumerate() {
        let d = n.dist(p);
        if d < tol && best.is_none_or(|(_, bd)| d < bd) {
            best = Some((i, d));
        }
    }
    match best {
        Some((i, _)) => i,
        None => {
            nodes.push(p);
            nodes.len() - 1
        }
    }
}

/// Builds the graph: segment endpoints become nodes (snapped within
/// `merge_tol`), each segment one edge.
pub fn build_graph(segments: &[AxisSegment], merge_tol: f64) -> Result<NavGraph, PlanError> {
    if segments.is_empty() {
        return Err(PlanError::EmptyChart);
    }
    let mut nodes = Vec::new();
    let mut node_regions: Vec<BTreeSet<String>> = Vec::new();
    let mut edges: Vec<NavEdge> = Vec::new();

    for seg in segments {
        let (Some(&first), Some(&last)) = (seg.points.first(), seg.points.last()) else {
            continue;
        };
        let a = snap(&mut nodes, first, merge_tol);
        let b = snap(&mut nodes, last, merge_tol);
        node_regions.resize(nodes.len(), BTreeSet::new());
        if let Some(r) = &seg.region {
            node_regions[a].insert(r.clone());
            node_regions[b].insert(r.clone());
        }
        if a == b {
            continue;
        }
        let mut polyline = seg.points.clone();
        polyline[0] = nodes[a];
        let n = polyline.len();
        polyline[n - 1] = nodes[b];
        let length = polyline_length(&polyline);
        let duplicate = edges
            .iter()
            .any(|e| ((e.a == a && e.b == b) || (e.a == b && e.b == a)) && (e.length - length).abs() <= merge_tol);
        if duplicate {
            continue;
        }
        edges.push(NavEdge { a, b, length, polyline, depth: 0.0, synthetic: false, region: seg.region.clone() });
    }

    Ok(NavGraph { node_depths: vec![0.0; nodes.len()], nodes, node_regions, edges })
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn component_labels(g: &NavGraph) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..g.nodes.len()).collect();
    for e in &g.edges {
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    (0..g.nodes.len()).map(|i| find(&mut parent, i)).collect()
}

pub fn count_components(g: &NavGraph) -> usize {
    let labels = component_labels(g);
    labels.iter().enumerate().filter(|&(i, &l)| i == l).count()
}

/// Joins disconnected components by repeatedly adding a straight synthetic
/// edge between the globally closest pair of nodes in different components.
pub fn connect_components(mut g: NavGraph) -> NavGraph {
    loop {
        let labels = component_labels(&g);
        let mut best: Option<(usize, usize, f64)> = None;
        for i in 0..g.nodes.len() {
            for j in (i + 1)..g.nodes.len() {
                if labels[i] == labels[j] {
                    continue;
                }
                let d = g.nodes[i].dist(g.nodes[j]);
                if best.is_none_or(|(_, _, bd)| d < bd) {
                    best = Some((i, j, d));
                }
            }
        }
        let Some((i, j, d)) = best else {
            return g;
        };
        g.edges.push(NavEdge {
            a: i,
            b: j,
            length: d,
            polyline: vec![g.nodes[i], g.nodes[j]],
            depth: 0.0,
            synthetic: true,
            region: None,
        });
    }
}
