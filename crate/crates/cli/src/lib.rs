//! Command-line front end for absim: scenario runs, route planning and
//! validation, plus the file formats the runs produce.

pub mod commands;
pub mod output;
pub mod render;

pub use commands::{plan, run, run_one, validate, Failure, RunOutputs, RunSummary};
pub use output::{csv_header, fmt_sig9, metrics_json, route_geojson, trajectory_csv, write_atomic, CSV_COLUMNS};
pub use render::render_svg;
