//! Shared inputs for the benchmarks.

use std::path::{Path, PathBuf};

use absim_core::chart::ChartFeatureSet;
use absim_core::colav::ObstacleState;
use absim_core::model::VesselState;
use absim_core::planner::{assign_depths, build_graph, connect_components, NavGraph};
use absim_core::sim::{load_chart, ChartSource, PlannerSettings};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn ghent_chart() -> ChartFeatureSet {
    load_chart(&ChartSource::Json(data_dir().join("charts/ghent_like.json"))).expect("bundled chart loads")
}

/// Depth-annotated navigation graph of the bundled chart.
pub fn ghent_graph(chart: &ChartFeatureSet) -> NavGraph {
    let settings = PlannerSettings::default();
    let lines = chart.layer("wtwaxs").map(|l| l.lines.as_slice()).unwrap_or(&[]);
    let segments = absim_core::chart::clean_waterway_axes(lines, settings.axis_epsilon);
    let graph = connect_components(build_graph(&segments, settings.merge_tol).expect("graph builds"));
    assign_depths(graph, chart.depare())
}

pub fn cruising() -> VesselState {
    VesselState { u: 3.0, v: -0.05, r: 0.004, psi: 0.2, ..Default::default() }
}

/// Three vessels around the own ship: head-on, crossing from starboard and
/// one being overtaken.
pub fn traffic() -> Vec<ObstacleState> {
    vec![
        ObstacleState { x: 600.0, y: 20.0, course: 3.1, speed: 3.0, length: 80.0 },
        ObstacleState { x: 400.0, y: -350.0, course: 1.6, speed: 2.5, length: 110.0 },
        ObstacleState { x: 150.0, y: 10.0, course: 0.0, speed: 1.0, length: 60.0 },
    ]
}
