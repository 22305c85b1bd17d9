use std::collections::BTreeSet;
use std::path::Path;

use absim_core::chart::AxisSegment;
use absim_core::geometry::Point;
use absim_core::planner::{
    build_graph, connect_components, count_components, plan_path, refine_path, shortest_path, NavEdge, NavGraph,
    PlanError, PlannedRoute,
};
use absim_core::sim::{prepare_route, Scenario};
use proptest::prelude::*;

fn graph_strategy() -> impl Strategy<Value = NavGraph> {
    (2usize..9).prop_flat_map(|n| {
        let nodes = prop::collection::vec((0.0f64..100.0, 0.0f64..100.0), n);
        let edges = prop::collection::vec((0..n, 0..n, 1u8..5, prop::sample::select(vec![1.0, 3.0, 5.0])), 0..16);
        (nodes, edges).prop_map(|(nodes, edges)| {
            let nodes: Vec<Point> = nodes.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            let edges = edges
                .into_iter()
                .filter(|(a, b, _, _)| a != b)
                .map(|(a, b, len, depth)| NavEdge {
                    a,
                    b,
                    length: len as f64,
                    polyline: vec![nodes[a], nodes[b]],
                    depth,
                    synthetic: false,
                    region: None,
                })
                .collect();
            NavGraph {
                node_depths: vec![5.0; nodes.len()],
                node_regions: vec![BTreeSet::new(); nodes.len()],
                nodes,
                edges,
            }
        })
    })
}

proptest! {
    #[test]
    fn routes_use_only_deep_enough_edges(g in graph_strategy(), min_depth in prop::sample::select(vec![0.0, 2.0, 4.0])) {
        let to = g.nodes.len() - 1;
        match shortest_path(&g, 0, to, min_depth) {
            Ok(sp) => {
                prop_assert_eq!(sp.nodes.first(), Some(&0));
                prop_assert_eq!(sp.nodes.last(), Some(&to));
                prop_assert_eq!(sp.edges.len() + 1, sp.nodes.len());
                let mut total = 0.0;
                for (k, &ei) in sp.edges.iter().enumerate() {
                    let e = &g.edges[ei];
                    prop_assert!(e.depth >= min_depth);
                    prop_assert!(
                        (e.a == sp.nodes[k] && e.b == sp.nodes[k + 1]) || (e.b == sp.nodes[k] && e.a == sp.nodes[k + 1])
                    );
                    total += e.length;
                }
                prop_assert_eq!(total, sp.cost);
            }
            Err(err) => prop_assert!(matches!(err, PlanError::NoRoute { .. }), "{:?}", err),
        }
    }

    #[test]
    fn cost_never_decreases_with_required_depth(g in graph_strategy()) {
        let to = g.nodes.len() - 1;
        let costs: Vec<f64> = [0.0, 2.0, 4.0, 6.0]
            .iter()
            .map(|&d| shortest_path(&g, 0, to, d).map_or(f64::INFINITY, |sp| sp.cost))
            .collect();
        prop_assert!(costs.windows(2).all(|w| w[0] <= w[1]), "{:?}", costs);
        // nothing is 6 m deep
        prop_assert!(to == 0 || costs[3].is_infinite());
    }

    #[test]
    fn connecting_leaves_one_component(g in graph_strategy()) {
        let before = count_components(&g);
        let original_edges = g.edges.len();
        let joined = connect_components(g);
        prop_assert_eq!(count_components(&joined), 1);
        prop_assert_eq!(joined.synthetic_edge_count(), before - 1);
        prop_assert_eq!(joined.edges.len(), original_edges + before - 1);
        for e in joined.edges.iter().filter(|e| e.synthetic) {
            prop_assert_eq!(e.length, joined.nodes[e.a].dist(joined.nodes[e.b]));
        }
    }

    #[test]
    fn refinement_keeps_endpoints(
        pts in prop::collection::vec((-500.0f64..500.0, -500.0f64..500.0), 2..40),
        window in prop::sample::select(vec![1usize, 3, 5, 7]),
        dup_tol in 0.0f64..20.0,
    ) {
        let path_points: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
        let route = PlannedRoute {
            path_depths: (0..path_points.len()).map(|i| i as f64).collect(),
            path_points,
        };
        let refined = refine_path(&route, dup_tol, window);
        let (a, b) = (route.path_points[0], *route.path_points.last().unwrap());
        prop_assert_eq!(refined.path_points.first(), Some(&a));
        prop_assert_eq!(refined.path_points.last(), Some(&b));
        prop_assert!(refined.path_points.len() <= route.path_points.len());
        prop_assert_eq!(refined.path_points.len(), refined.path_depths.len());
        for d in &refined.path_depths {
            prop_assert!(route.path_depths.contains(d));
        }
    }
}

fn seg(pts: &[(f64, f64)]) -> AxisSegment {
    AxisSegment { points: pts.iter().map(|&(x, y)| Point::new(x, y)).collect(), region: None }
}

#[test]
fn two_islands_are_bridged_at_their_closest_nodes() {
    let g = build_graph(&[seg(&[(0.0, 0.0), (10.0, 0.0)]), seg(&[(13.0, 4.0), (30.0, 4.0)])], 0.5).unwrap();
    assert_eq!(count_components(&g), 2);
    let g = connect_components(g);
    let bridge = g.edges.iter().find(|e| e.synthetic).unwrap();
    assert_eq!(bridge.length, 5.0);
    assert_eq!(bridge.depth, 0.0);
    // synthetic edges carry no depth, so a depth-constrained route cannot cross
    let err = plan_path(&g, Point::new(0.0, 0.0), Point::new(30.0, 4.0), 1.0).unwrap_err();
    assert!(matches!(err, PlanError::NoRoute { .. }));
    assert!(plan_path(&g, Point::new(0.0, 0.0), Point::new(30.0, 4.0), 0.0).is_ok());
}

fn ghent(min_depth: f64) -> PlannedRoute {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/scenarios/ghent_plan_pid.json");
    let mut scn = Scenario::load(&path).unwrap();
    if let absim_core::sim::RouteSpec::Plan { min_depth: d, .. } = &mut scn.config.route {
        *d = min_depth;
    }
    prepare_route(&scn).unwrap().1
}

#[test]
fn deep_route_avoids_the_shallow_canal() {
    let deep = ghent(3.0);
    let shallow = ghent(2.0);
    // the canal dips to y = -350 m while the river stays above y = -200 m
    assert!(deep.path_points.iter().all(|p| p.y > -210.0));
    assert!(deep.path_depths.iter().all(|&d| d >= 3.0));
    assert!(shallow.path_points.iter().any(|p| p.y < -300.0));
    assert!(shallow.length() < deep.length());
}
